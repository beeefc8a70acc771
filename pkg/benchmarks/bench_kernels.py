"""Compare the compiled and pure-Python arithmetic kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints operations per second for each kernel and backend, plus the speedup.
"""

import argparse
import random
import timeit

from mixedquiver._conway import CONWAY
from mixedquiver.kernels import _pykernels as py

try:
    from mixedquiver.kernels import _ckernels as cy
except ImportError:
    cy = None


def workloads(rng):
    out = []
    for p, d in ((2, 4), (2, 10), (3, 6), (7, 3)):
        mod_low = py.pack(CONWAY[(p, d)], p)
        q = p ** d
        pairs = [(rng.randrange(q), rng.randrange(q)) for _ in range(2000)]
        out.append((f"gf_mul GF({p}^{d})", len(pairs),
                    lambda k, pairs=pairs, p=p, d=d, m=mod_low: [k.gf_mul(a, b, p, d, m) for a, b in pairs]))
        exps = [(a, rng.randrange(q)) for a, _ in pairs[:300]]
        out.append((f"gf_pow GF({p}^{d})", len(exps),
                    lambda k, exps=exps, p=p, d=d, m=mod_low: [k.gf_pow(a, n, p, d, m) for a, n in exps]))
    for p, size in ((2, 24), (5, 16)):
        mats = [[[rng.randrange(p) for _ in range(size)] for _ in range(size)] for _ in range(20)]
        out.append((f"rank_mod_p {size}x{size} mod {p}", len(mats),
                    lambda k, mats=mats, p=p: [k.rank_mod_p(m, p) for m in mats]))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    backends = [("python", py)] + ([("cython", cy)] if cy is not None else [])
    if cy is None:
        print("compiled kernels not built; reporting the Python fallback only")
    print(f"{'kernel':32} " + " ".join(f"{name + ' ops/s':>16}" for name, _ in backends) + "   speedup")
    for label, count, fn in workloads(random.Random(args.seed)):
        if cy is not None:
            assert fn(cy) == fn(py), label
        rates = []
        for _, mod in backends:
            best = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat))
            rates.append(count / best)
        speed = f"{rates[1] / rates[0]:8.1f}x" if len(rates) > 1 else ""
        print(f"{label:32} " + " ".join(f"{r:16,.0f}" for r in rates) + "   " + speed)


if __name__ == "__main__":
    main()
