"""Trainer tests: separability, objective monotonicity, determinism, persistence."""
import numpy as np
import pytest

from nonissue.svm import (
    KERNEL_BACKEND,
    LinearModel,
    ModelBundle,
    TrainConfig,
    TrainError,
    decision,
    load_model,
    predict,
    save_model,
    train,
)
from nonissue.vectorize import SparseVector, Vocabulary, fit_vocabulary, transform


def blobs_40(seed=42, center=3.0, scale=0.4):
    rng = np.random.default_rng(seed)
    X, y = [], []
    for label, sign in ((+1, 1.0), (-1, -1.0)):
        for point in rng.normal(loc=sign * center, scale=scale, size=(20, 2)):
            X.append(SparseVector((0, 1), (float(point[0]), float(point[1]))))
            y.append(label)
    return X, y


class TestTrain:
    def test_separable_pair(self):
        X = [SparseVector((0,), (-1.0,)), SparseVector((0,), (1.0,))]
        model = train(X, [-1, +1], TrainConfig(C=1.0), n_features=1)
        assert predict(model, X[0]) == (-1, pytest.approx(-1.0))
        assert predict(model, X[1]) == (+1, pytest.approx(1.0))

    def test_forty_point_separable_set(self):
        X, y = blobs_40()
        model = train(X, y, TrainConfig(C=1.0, max_epochs=20000, tolerance=1e-12), n_features=2)
        margins = [decision(model, x) for x in X]
        assert all((m > 0) == (label > 0) for m, label in zip(margins, y))
        total_hinge = sum(max(0.0, 1.0 - label * m) for m, label in zip(margins, y))
        assert total_hinge <= 1e-6  # zero hinge loss up to float convergence

    def test_objective_non_increasing_on_any_input(self):
        rng = np.random.default_rng(3)
        X, y = [], []
        for i in range(50):  # overlapping classes: not separable
            point = rng.normal(size=3)
            cols = tuple(int(c) for c in range(3))
            X.append(SparseVector(cols, tuple(float(v) if v != 0 else 0.1 for v in point)))
            y.append(+1 if rng.random() < 0.4 else -1)
        model = train(X, y, TrainConfig(C=1.0, max_epochs=2000, tolerance=1e-9), n_features=3)
        diffs = np.diff(model.objective_history)
        assert diffs.max() <= 1e-9

    def test_bit_identical_across_runs(self):
        X, y = blobs_40()
        config = TrainConfig(C=1.0, max_epochs=5000, tolerance=1e-10, seed=11)
        a = train(X, y, config, n_features=2)
        b = train(X, y, config, n_features=2)
        assert np.array_equal(a.weights, b.weights)
        assert a.bias == b.bias
        assert a.objective_history == b.objective_history

    def test_single_class_rejected(self):
        X = [SparseVector((0,), (1.0,)), SparseVector((0,), (2.0,))]
        with pytest.raises(TrainError, match="single class"):
            train(X, [+1, +1], TrainConfig(), n_features=1)

    def test_size_mismatch_rejected(self):
        X = [SparseVector((0,), (1.0,))]
        with pytest.raises(TrainError):
            train(X, [+1, -1], TrainConfig(), n_features=1)

    def test_bad_labels_rejected(self):
        X = [SparseVector((0,), (1.0,)), SparseVector((0,), (-1.0,))]
        with pytest.raises(TrainError):
            train(X, [1, 0], TrainConfig(), n_features=1)

    def test_column_out_of_range_rejected(self):
        X = [SparseVector((5,), (1.0,)), SparseVector((0,), (-1.0,))]
        with pytest.raises(TrainError):
            train(X, [+1, -1], TrainConfig(), n_features=2)

    def test_config_validation(self):
        with pytest.raises(TrainError):
            TrainConfig(C=0.0)
        with pytest.raises(TrainError):
            TrainConfig(tolerance=0.0)


class TestPredict:
    def test_zero_margin_is_issue(self):
        model = LinearModel(weights=np.zeros(2), bias=0.0, C=1.0)
        label, margin = predict(model, SparseVector((), ()))
        assert (label, margin) == (-1, 0.0)

    def test_margin_is_raw_decision_value(self):
        model = LinearModel(weights=np.asarray([2.0, 0.0]), bias=0.3, C=1.0)
        label, margin = predict(model, SparseVector((0,), (1.0,)))
        assert label == +1
        assert margin == pytest.approx(2.3)


def test_backends_agree_exactly():
    import os
    import subprocess
    import sys

    if KERNEL_BACKEND != "compiled":
        pytest.skip("compiled kernel not available")
    code = (
        "import numpy as np, hashlib\n"
        "import nonissue.svm as svm\n"
        "from nonissue.vectorize import SparseVector\n"
        "rng = np.random.default_rng(5)\n"
        "X, y = [], []\n"
        "for i in range(80):\n"
        "    cols = tuple(sorted(rng.choice(40, size=int(rng.integers(1, 7)), replace=False).tolist()))\n"
        "    vals = tuple(float(v) if v != 0 else 0.1 for v in rng.normal(size=len(cols)))\n"
        "    X.append(SparseVector(cols, vals)); y.append(1 if i % 4 == 0 else -1)\n"
        "m = svm.train(X, y, svm.TrainConfig(max_epochs=400, tolerance=1e-10), n_features=40)\n"
        "print(hashlib.sha256(m.weights.tobytes()).hexdigest(), repr(m.bias), len(m.objective_history))\n"
    )
    outputs = []
    for backend in ("compiled", "numpy"):
        env = dict(os.environ, NONISSUE_SVM_BACKEND=backend)
        result = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
        assert result.returncode == 0, result.stderr
        outputs.append(result.stdout)
    assert outputs[0] == outputs[1]


class TestPersistence:
    def test_round_trip(self, tmp_path):
        bags = [{"ng:kart": 1, "ma:Negative": 2}, {"ng:ekran": 1}, {"ng:kart": 1, "pat:NI_REQUEST": 1}]
        vocab = fit_vocabulary(bags)
        X = [transform(bag, vocab) for bag in bags]
        model = train([X[0], X[1], X[2]], [+1, -1, +1], TrainConfig(), n_features=len(vocab))
        bundle = ModelBundle(vocabulary=vocab, model=model, extractors=("ngrams", "ma", "patterns"))
        path = tmp_path / "model.txt"
        save_model(path, bundle)
        loaded = load_model(path)
        assert loaded.vocabulary.index == vocab.index
        assert loaded.vocabulary.idf == pytest.approx(vocab.idf, abs=0)
        assert loaded.vocabulary.doc_count == vocab.doc_count
        assert np.array_equal(loaded.model.weights, model.weights)
        assert loaded.model.bias == model.bias
        assert loaded.model.C == model.C
        assert loaded.extractors == ("ngrams", "ma", "patterns")
        # scoring agrees exactly after reload
        for x in X:
            assert decision(loaded.model, x) == decision(model, x)

    def test_reject_foreign_file(self, tmp_path):
        path = tmp_path / "junk.txt"
        path.write_text("not a model\n")
        with pytest.raises(TrainError):
            load_model(path)

    def test_reject_feature_count_mismatch(self, tmp_path):
        vocab = Vocabulary(index={"a": 0}, idf=(1.0,), doc_count=1)
        model = LinearModel(weights=np.zeros(2), bias=0.0, C=1.0)
        with pytest.raises(TrainError):
            save_model(tmp_path / "m.txt", ModelBundle(vocab, model, ("ngrams",)))
