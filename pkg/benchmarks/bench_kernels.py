"""Compare the compiled and pure-Python Jacobi eigensolver kernels.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from chibench.qmath import available_kernels, hermitian_eigen


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


def time_kernel(kernel, mats):
    start = time.perf_counter()
    for m in mats:
        hermitian_eigen(m, kernel=kernel)
    return (time.perf_counter() - start) / len(mats)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=200)
    args = parser.parse_args()

    rng = np.random.default_rng(7)
    kernels = available_kernels()
    print(f"kernels: {', '.join(kernels)}")
    print(f"{'n':>4}  " + "  ".join(f"{k:>12}" for k in kernels) + "  speedup")
    for n in (4, 16, 36):
        reps = max(args.repeat // (n // 4) ** 2, 5)
        mats = [random_hermitian(rng, n) for _ in range(reps)]
        # agreement check before timing
        ref = np.linalg.eigvalsh(mats[0])
        for k in kernels:
            assert np.max(np.abs(hermitian_eigen(mats[0], kernel=k)[0] - ref)) < 1e-10
        times = {k: time_kernel(k, mats) for k in kernels}
        cells = "  ".join(f"{times[k] * 1e6:>10.1f}us" for k in kernels)
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{n:>4}  {cells}  {speed:6.1f}x")


if __name__ == "__main__":
    main()
