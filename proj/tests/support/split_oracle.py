# Reference for the frozen split in experiment_test: std::seed_seq, std::mt19937_64,
# rejection-sampled Fisher-Yates over sorted ids. Prints the test ids.
M32=0xffffffff; M64=(1<<64)-1
def seed_seq(v, n):
    s=len(v); out=[0x8b8b8b8b]*n
    t=11 if n>=623 else 7 if n>=68 else 5 if n>=39 else 3 if n>=7 else (n-1)//2
    p=(n-t)//2; q=p+t; m=max(s+1,n)
    T=lambda x:(x^(x>>27))&M32
    for k in range(m):
        r1=(1664525*T(out[k%n]^out[(k+p)%n]^out[(k-1)%n]))&M32
        r2=(r1+(s if k==0 else (k%n)+v[k-1] if k<=s else k%n))&M32
        out[(k+p)%n]=(out[(k+p)%n]+r1)&M32; out[(k+q)%n]=(out[(k+q)%n]+r2)&M32; out[k%n]=r2
    for k in range(m,m+n):
        r3=(1566083941*T((out[k%n]+out[(k+p)%n]+out[(k-1)%n])&M32))&M32
        r4=(r3-(k%n))&M32
        out[(k+p)%n]^=r3; out[(k+q)%n]^=r4; out[k%n]=r4
    return out
class MT64:
    n,m=312,156
    def __init__(s,seq):
        a=seed_seq(seq,2*s.n); s.x=[a[2*i]|(a[2*i+1]<<32) for i in range(s.n)]; s.i=s.n
    def __call__(s):
        if s.i>=s.n:
            for k in range(s.n):
                y=(s.x[k]&~((1<<31)-1)&M64)|(s.x[(k+1)%s.n]&((1<<31)-1))
                s.x[k]=s.x[(k+s.m)%s.n]^(y>>1)^(0xb5026f5aa96619e9 if y&1 else 0)
            s.i=0
        z=s.x[s.i]; s.i+=1
        z^=(z>>29)&0x5555555555555555; z^=(z<<17)&0x71d67fffeda60000; z^=(z<<37)&0xfff7eee000000000; z^=z>>43
        return z&M64
def bounded(r,b):
    lim=M64-(M64%b)
    while True:
        x=r()
        if x<lim: return x%b
ids=sorted("g%d"%i for i in range(10)); r=MT64([0,0,0])
for i in range(len(ids),1,-1):
    j=bounded(r,i); ids[i-1],ids[j]=ids[j],ids[i-1]
print(sorted(ids[8:]))
