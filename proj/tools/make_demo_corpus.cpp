// Writes a synthetic corpus of TensorFlow-style training graphs in GraphDef
// text form plus a manifest. Three task families (image, text, control),
// each graph carrying variable initializers, an optimizer, a saver and
// summaries; some repositories are forks holding exact copies.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "opmine/ingest.hpp"

namespace fs = std::filesystem;

namespace {

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  // Modulo bias is irrelevant here; the corpus is generated once and committed.
  int below(int n) { return static_cast<int>(engine() % static_cast<std::uint64_t>(n)); }
  bool chance(int percent) { return below(100) < percent; }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[static_cast<std::size_t>(below(static_cast<int>(v.size())))]; }
};

struct NodeDef {
  std::string name, op;
  std::vector<std::string> inputs;
};

class Builder {
 public:
  std::string add(const std::string& name, const std::string& op, std::vector<std::string> inputs = {}) {
    std::string unique = name;
    for (int k = 1; !names_.insert(unique).second; ++k) unique = name + "_" + std::to_string(k);
    nodes_.push_back({unique, op, std::move(inputs)});
    return unique;
  }

  // Variable with initializer subgraph; returns the tensor consumers read.
  std::string variable(Rng& rng, const std::string& scope, bool with_read = true) {
    const std::string var = add(scope, rng.chance(80) ? "VariableV2" : "VarHandleOp");
    const std::string shape = add(var + "/Initializer/shape", "Const");
    std::string init = add(var + "/Initializer/random", rng.chance(50) ? "RandomUniform" : "TruncatedNormal", {shape});
    if (rng.chance(60)) {
      const std::string scale = add(var + "/Initializer/scale", "Const");
      init = add(var + "/Initializer/mul", "Mul", {init, scale});
    }
    assigns_.push_back(add(var + "/Assign", "Assign", {var, init}));
    variables_.push_back(var);
    return with_read ? add(var + "/read", "Identity", {var}) : var;
  }

  // Optimizer, saver, summaries and the init op.
  void training(Rng& rng, const std::string& logits) {
    const std::string labels = add("labels", "Placeholder");
    const std::string xent = add("loss/xent", "SoftmaxCrossEntropyWithLogits", {logits, labels});
    const std::string loss = add("loss/Mean", "Mean", {xent});

    std::string grad = add("gradients/Shape", "Shape", {loss});
    grad = add("gradients/Fill", "Fill", {grad});
    std::vector<std::string> grads;
    const std::size_t forward = nodes_.size();
    for (std::size_t i = forward; i-- > 0;) {
      const auto& n = nodes_[i];
      if (n.op == "Relu" || n.op == "MatMul" || n.op == "Conv2D" || n.op == "Tanh" || n.op == "BiasAdd") {
        const std::string fwd = n.name;
        const std::string op = n.op + "Grad";
        grad = add("gradients/" + fwd + "_grad/" + op, op, {grad, fwd});
        grads.push_back(grad);
      }
      if (grads.size() > 12) break;
    }
    const std::string adam = rng.chance(70) ? "Adam" : "Momentum";
    const std::string beta1 = add("beta1_power", "VariableV2");
    add("beta1_power/Assign", "Assign", {beta1, add("beta1_power/initial_value", "Const")});
    const std::vector<std::string> vars = variables_;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const std::string slot = add(adam + "/slots/" + vars[i], "VariableV2");
      add(adam + "/update_" + vars[i] + "/Apply" + adam, "Apply" + adam,
          {vars[i], slot, beta1, grads.empty() ? grad : grads[i % grads.size()]});
    }
    add(adam + "/update", "NoOp", {"^" + loss});

    const std::string filename = add("save/filename", "Const");
    std::vector<std::string> save_inputs{filename, add("save/tensor_names", "Const")};
    for (const auto& v : vars) save_inputs.push_back(v);
    add("save/SaveV2", "SaveV2", save_inputs);
    const std::string restore = add("save/RestoreV2", "RestoreV2", {filename});
    for (std::size_t i = 0; i < vars.size(); ++i) add("save/Assign", "Assign", {vars[i], restore + ":" + std::to_string(i)});
    if (rng.chance(70)) {
      const std::string s = add("summaries/loss", "ScalarSummary", {loss});
      add("summaries/merged", "MergeSummary", {s});
    }
    std::vector<std::string> ctrl;
    for (const auto& a : assigns_) ctrl.push_back("^" + a);
    add("init", "NoOp", ctrl);
  }

  std::string text() const {
    std::string out;
    for (const auto& n : nodes_) {
      out += "node {\n  name: \"" + n.name + "\"\n  op: \"" + n.op + "\"\n";
      for (const auto& in : n.inputs) out += "  input: \"" + in + "\"\n";
      out += "  attr {\n    key: \"T\"\n    value {\n      type: DT_FLOAT\n    }\n  }\n}\n";
    }
    return out + "versions {\n  producer: 26\n}\n";
  }

 private:
  std::vector<NodeDef> nodes_;
  std::set<std::string> names_;
  std::vector<std::string> variables_;
  std::vector<std::string> assigns_;
};

std::string dense(Builder& b, Rng& rng, const std::string& scope, const std::string& x, const std::string& act) {
  std::string y = b.add(scope + "/MatMul", "MatMul", {x, b.variable(rng, scope + "/kernel")});
  y = b.add(scope + "/BiasAdd", "BiasAdd", {y, b.variable(rng, scope + "/bias")});
  return act.empty() ? y : b.add(scope + "/" + act, act, {y});
}

void image_model(Builder& b, Rng& rng) {
  std::string x = b.add("input", "Placeholder");
  const int blocks = 2 + rng.below(3);
  const std::string act = rng.pick<std::string>({"Relu", "Relu", "Relu", "Elu"});
  for (int i = 0; i < blocks; ++i) {
    const std::string s = "conv" + std::to_string(i + 1);
    x = b.add(s + "/Conv2D", "Conv2D", {x, b.variable(rng, s + "/kernel")});
    if (rng.chance(30)) {
      x = b.add(s + "/FusedBatchNorm", "FusedBatchNorm", {x, b.variable(rng, s + "/gamma"), b.variable(rng, s + "/beta")});
    } else {
      x = b.add(s + "/BiasAdd", "BiasAdd", {x, b.variable(rng, s + "/bias")});
    }
    x = b.add(s + "/" + act, act, {x});
    if (rng.chance(75)) x = b.add("pool" + std::to_string(i + 1), rng.chance(80) ? "MaxPool" : "AvgPool", {x});
  }
  x = b.add("flatten/Reshape", "Reshape", {x, b.add("flatten/shape", "Const")});
  if (rng.chance(50)) x = dense(b, rng, "fc1", x, "Relu");
  if (rng.chance(40)) {
    const std::string keep = b.add("dropout/keep_prob", "Placeholder");
    x = b.add("dropout/mul", "Mul", {x, b.add("dropout/Floor", "Floor", {keep})});
  }
  const std::string logits = dense(b, rng, "logits", x, "");
  b.add("predictions", "Softmax", {logits});
  b.training(rng, logits);
}

void text_model(Builder& b, Rng& rng) {
  const std::string ids = b.add("tokens", "Placeholder");
  std::string x = b.add("embedding/lookup", "GatherV2", {b.variable(rng, "embedding/table"), ids, b.add("embedding/axis", "Const")});
  const int steps = 2 + rng.below(3);
  const std::string kernel = b.variable(rng, "lstm/kernel");
  const std::string bias = b.variable(rng, "lstm/bias");
  std::string h = b.add("lstm/zeros", "Const");
  std::string c = b.add("lstm/zeros_c", "Const");
  for (int t = 0; t < steps; ++t) {
    const std::string s = "lstm/cell_" + std::to_string(t);
    const std::string xt = b.add(s + "/slice", "StridedSlice", {x});
    const std::string cat = b.add(s + "/concat", "ConcatV2", {xt, h});
    std::string z = b.add(s + "/MatMul", "MatMul", {cat, kernel});
    z = b.add(s + "/BiasAdd", "BiasAdd", {z, bias});
    const std::string split = b.add(s + "/split", "Split", {z});
    const std::string i = b.add(s + "/Sigmoid", "Sigmoid", {split});
    const std::string f = b.add(s + "/Sigmoid_f", "Sigmoid", {split + ":2"});
    const std::string o = b.add(s + "/Sigmoid_o", "Sigmoid", {split + ":3"});
    const std::string g = b.add(s + "/Tanh", "Tanh", {split + ":1"});
    c = b.add(s + "/add", "Add", {b.add(s + "/mul", "Mul", {c, f}), b.add(s + "/mul_1", "Mul", {i, g})});
    h = b.add(s + "/mul_2", "Mul", {b.add(s + "/Tanh_1", "Tanh", {c}), o});
  }
  if (rng.chance(50)) h = dense(b, rng, "hidden", h, "Tanh");
  const std::string logits = dense(b, rng, "logits", h, "");
  b.add("predictions", "Softmax", {logits});
  b.training(rng, logits);
}

void control_model(Builder& b, Rng& rng) {
  std::string x = b.add("observation", "Placeholder");
  const int layers = 2 + rng.below(3);
  const std::string act = rng.pick<std::string>({"Relu", "Relu", "Tanh"});
  for (int i = 0; i < layers; ++i) x = dense(b, rng, "q_net/dense_" + std::to_string(i), x, act);
  const std::string q = dense(b, rng, "q_net/q_values", x, "");
  b.add("action", "ArgMax", {q, b.add("action/dimension", "Const")});
  if (rng.chance(50)) {
    const std::string target = dense(b, rng, "target_net/dense_0", b.add("next_observation", "Placeholder"), act);
    b.add("target/Max", "Max", {dense(b, rng, "target_net/q_values", target, "")});
  }
  b.training(rng, q);
}

struct Task {
  std::string tag;
  void (*build)(Builder&, Rng&);
  std::vector<std::string> descriptions;
  std::vector<std::string> readme_words;
};

const std::vector<Task>& tasks() {
  static const std::vector<Task> t{
      {"image",
       image_model,
       {"Image classification with a small convolutional network on CIFAR-10",
        "Convnet image classifier for MNIST digits", "Image recognition CNN trained on a flowers dataset",
        "Object classification convolutional model for traffic signs"},
       {"convolution", "pooling", "augmentation", "accuracy", "image", "pixels"}},
      {"text",
       text_model,
       {"Sentiment classification of movie reviews with an LSTM", "Text classification recurrent network for news topics",
        "Character-level language model using LSTM cells", "Spam detection on SMS text with word embeddings"},
       {"tokenizer", "vocabulary", "embedding", "sequence", "text", "words"}},
      {"reinforcement",
       control_model,
       {"Deep Q-network agent for CartPole reinforcement learning", "Reinforcement learning DQN playing Atari Pong",
        "Q-learning agent with experience replay for LunarLander", "Policy network for a gridworld reinforcement task"},
       {"reward", "episode", "agent", "environment", "replay", "epsilon"}},
  };
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path("data/demo");
  const int originals = argc > 2 ? std::stoi(argv[2]) : 48;
  const int forks = argc > 3 ? std::stoi(argv[3]) : 12;
  Rng rng(20190901);

  struct Made {
    std::string id, repo, text, description, readme, tag;
  };
  std::vector<Made> made;
  for (int i = 0; i < originals; ++i) {
    const Task& task = tasks()[static_cast<std::size_t>(i % 3)];
    Builder b;
    task.build(b, rng);
    Made m;
    char id[32];
    std::snprintf(id, sizeof id, "%s_%03d", task.tag.c_str(), i);
    m.id = id;
    m.repo = "user" + std::to_string(i / 2) + "/" + task.tag + "-models";
    m.text = b.text();
    m.description = rng.pick(task.descriptions);
    m.readme = "This repository trains a model. Keywords: " + rng.pick(task.readme_words) + ", " +
               rng.pick(task.readme_words) + ".";
    m.tag = task.tag;
    made.push_back(std::move(m));
  }
  for (int f = 0; f < forks; ++f) {
    // fork: same graph with blocks reordered, under another repository
    const Made& src = made[static_cast<std::size_t>(rng.below(originals))];
    Made m = src;
    m.id = src.id + "_fork" + std::to_string(f);
    m.repo = "forker" + std::to_string(f) + "/" + src.tag + "-models";
    std::vector<std::string> blocks;
    std::size_t pos = 0;
    while ((pos = m.text.find("node {", pos)) != std::string::npos) {
      const std::size_t end = m.text.find("\n}\n", pos);
      blocks.push_back(m.text.substr(pos, end + 3 - pos));
      pos = end + 3;
    }
    for (std::size_t i = blocks.size(); i > 1; --i) std::swap(blocks[i - 1], blocks[static_cast<std::size_t>(rng.below(static_cast<int>(i)))]);
    m.text.clear();
    for (const auto& bl : blocks) m.text += bl;
    m.text += "versions {\n  producer: 26\n}\n";
    made.push_back(std::move(m));
  }

  fs::create_directories(dir / "graphs");
  std::string manifest;
  for (const auto& m : made) {
    const std::string rel = "graphs/" + m.id + ".pbtxt";
    opmine::write_text_file(dir / rel, m.text);
    nlohmann::json e{{"graph_id", m.id},   {"path", rel},          {"repo_id", m.repo},
                     {"description", m.description}, {"readme", m.readme}, {"tags", {m.tag}}};
    manifest += e.dump() + "\n";
  }
  opmine::write_text_file(dir / "manifest.jsonl", manifest);
  std::cout << "wrote " << made.size() << " graphs to " << dir.string() << "\n";
  return 0;
}
