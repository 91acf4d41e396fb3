"""Benchmark the compiled training kernel against the NumPy fallback.

Times the two epoch kernels (margins, hinge_grad) on synthetic CSR problems
and a full training run on the synthetic corpus with each backend forced.

    python3 benchmarks/svm_backends.py
"""
from __future__ import annotations

import importlib
import os
import subprocess
import sys
import time

import numpy as np


def make_problem(n_rows: int, n_features: int, nnz_per_row: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    indptr = np.arange(0, (n_rows + 1) * nnz_per_row, nnz_per_row, dtype=np.int64)
    indices = np.empty(n_rows * nnz_per_row, dtype=np.int64)
    for i in range(n_rows):
        cols = np.sort(rng.choice(n_features, size=nnz_per_row, replace=False))
        indices[i * nnz_per_row : (i + 1) * nnz_per_row] = cols
    data = rng.normal(size=n_rows * nnz_per_row)
    y = np.where(rng.random(n_rows) < 0.5, 1.0, -1.0)
    w = rng.normal(size=n_features)
    return indptr, indices, data, y, w


def bench_kernels(repeats: int = 200) -> None:
    problems = [
        ("1200x3000, 40 nnz", make_problem(1200, 3000, 40)),
        ("5000x10000, 60 nnz", make_problem(5000, 10000, 60)),
    ]
    backends = []
    try:
        backends.append(("compiled", importlib.import_module("nonissue._svm_kernel")))
    except ImportError:
        print("compiled kernel unavailable; benchmarking the fallback only")
    backends.append(("numpy", importlib.import_module("nonissue._svm_numpy")))

    print(f"{'problem':<22} {'backend':<9} {'margins':>12} {'hinge_grad':>12}")
    for label, (indptr, indices, data, y, w) in problems:
        for name, kernel in backends:
            m = kernel.margins(indptr, indices, data, y, w, 0.0)
            start = time.perf_counter()
            for _ in range(repeats):
                kernel.margins(indptr, indices, data, y, w, 0.0)
            t_margins = (time.perf_counter() - start) / repeats
            start = time.perf_counter()
            for _ in range(repeats):
                kernel.hinge_grad(indptr, indices, data, y, m, 1.0, len(w))
            t_grad = (time.perf_counter() - start) / repeats
            print(f"{label:<22} {name:<9} {t_margins * 1e3:>9.3f} ms {t_grad * 1e3:>9.3f} ms")


def bench_training() -> None:
    code = (
        "import time\n"
        "import nonissue.svm as svm\n"
        "from nonissue.features import FeatureExtractor, default_config\n"
        "from nonissue.morphology import default_analyzer\n"
        "from nonissue.patterns import default_catalog\n"
        "from nonissue.store import Verdict\n"
        "from nonissue.synth import GeneratorConfig, generate_synthetic\n"
        "from nonissue.vectorize import fit_vocabulary, transform\n"
        "pairs = generate_synthetic(GeneratorConfig(), seed=7)\n"
        "ex = FeatureExtractor(default_config(), default_analyzer(), default_catalog())\n"
        "bags = [ex.bag(r.text) for r, _ in pairs]\n"
        "y = [1 if l.verdict is Verdict.NON_ISSUE else -1 for _, l in pairs]\n"
        "vocab = fit_vocabulary(bags)\n"
        "X = [transform(b, vocab) for b in bags]\n"
        "start = time.perf_counter()\n"
        "m = svm.train(X, y, svm.TrainConfig(), n_features=len(vocab))\n"
        "dt = time.perf_counter() - start\n"
        "print(f'{svm.KERNEL_BACKEND}: train 1200x{len(vocab)} in {dt*1e3:.1f} ms "
        "({len(m.objective_history)} epochs)')\n"
    )
    for backend in ("compiled", "numpy"):
        env = dict(os.environ, NONISSUE_SVM_BACKEND=backend)
        result = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
        if result.returncode != 0:
            print(f"{backend}: unavailable")
        else:
            print(result.stdout.strip())


if __name__ == "__main__":
    print("== kernel micro-benchmarks ==")
    bench_kernels()
    print("\n== full training run (synthetic corpus, all extractors) ==")
    bench_training()
