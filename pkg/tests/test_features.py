import numpy as np
import pytest

from docpipe import features
from docpipe.errors import FormatError, OutOfBounds
from docpipe.features import TrainingSet, extract_features, read_training_file, write_training_file
from docpipe.segmentation import Blob


def make_page(gray_value=255):
    gray = np.full((60, 60), gray_value, dtype=np.uint8)
    binary = np.zeros((60, 60), dtype=np.uint8)
    return gray, binary


class TestExtractFeatures:
    def test_all_ink_blob(self):
        gray = np.zeros((40, 40), dtype=np.uint8)
        binary = np.ones((40, 40), dtype=np.uint8)
        fv = extract_features(gray, binary, Blob(id=0, x=5, y=5, w=20, h=20))
        assert fv.shape == (1200,)
        assert (fv[:400] == 0.0).all()  # normal plane: black
        assert (fv[400:800] == 0.0).all()  # binarized plane: ink -> 0
        assert (fv[800:] == 1.0).all()  # inverted plane

    def test_blank_paper_blob(self):
        gray, binary = make_page(255)
        fv = extract_features(gray, binary, Blob(id=0, x=0, y=0, w=30, h=30))
        assert (fv[:400] == 1.0).all()
        assert (fv[400:800] == 1.0).all()
        assert (fv[800:] == 0.0).all()

    def test_half_ink_blob(self):
        gray = np.full((40, 40), 255, dtype=np.uint8)
        binary = np.zeros((40, 40), dtype=np.uint8)
        gray[:, :20] = 0
        binary[:, :20] = 1
        fv = extract_features(gray, binary, Blob(id=0, x=0, y=0, w=40, h=40))
        plane2 = fv[400:800].reshape(20, 20)
        assert (plane2[:, :10] == 0.0).all()
        assert (plane2[:, 10:] == 1.0).all()

    def test_out_of_bounds(self):
        gray, binary = make_page()
        with pytest.raises(OutOfBounds):
            extract_features(gray, binary, Blob(id=0, x=50, y=50, w=20, h=20))

    def test_planes_are_complements(self, rng):
        gray = rng.integers(0, 256, (50, 50)).astype(np.uint8)
        binary = (rng.random((50, 50)) < 0.5).astype(np.uint8)
        fv = extract_features(gray, binary, Blob(id=0, x=3, y=7, w=33, h=17))
        assert np.all(np.abs(fv[400:800] + fv[800:] - 1.0) <= 1.0 / 255.0 + 1e-12)

    def test_values_in_unit_interval(self, rng):
        gray = rng.integers(0, 256, (50, 50)).astype(np.uint8)
        binary = (rng.random((50, 50)) < 0.3).astype(np.uint8)
        fv = extract_features(gray, binary, Blob(id=0, x=0, y=0, w=50, h=50))
        assert fv.min() >= 0.0 and fv.max() <= 1.0


def random_training_set(rng, m=5):
    X = rng.random((m, 1200))
    y = rng.integers(0, 26, m)
    return TrainingSet(X=X, y=y, alphabet="ABCDEFGHIJKLMNOPQRSTUVWXYZ")


class TestTrainingFile:
    def test_single_sample_format(self, tmp_path, rng):
        ts = TrainingSet(X=rng.random((1, 1200)), y=np.array([3]), alphabet="ABCDEFGHIJKLMNOPQRSTUVWXYZ")
        p = tmp_path / "train.txt"
        write_training_file(ts, p)
        lines = p.read_text().split("\n")
        assert lines[-1] == ""
        lines = lines[:-1]
        assert len(lines) == 3
        for line in lines:
            tokens = line.split(" ")
            assert len(tokens) == 401
            assert tokens[-1] == "3"

    def test_empty_set(self, tmp_path):
        ts = TrainingSet(X=np.empty((0, 1200)), y=np.empty(0, dtype=int), alphabet="AB")
        p = tmp_path / "train.txt"
        write_training_file(ts, p)
        assert p.read_text() == ""
        back = read_training_file(p)
        assert len(back) == 0

    def test_roundtrip(self, tmp_path, rng):
        ts = random_training_set(rng, m=7)
        p = tmp_path / "train.txt"
        write_training_file(ts, p)
        back = read_training_file(p)
        assert np.abs(back.X - ts.X).max() <= 1e-6
        assert (back.y == ts.y).all()

    def test_label_mismatch_in_triple(self, tmp_path, rng):
        ts = random_training_set(rng, m=1)
        p = tmp_path / "train.txt"
        write_training_file(ts, p)
        lines = p.read_text().rstrip("\n").split("\n")
        lines[1] = lines[1].rsplit(" ", 1)[0] + " 9"
        p.write_text("\n".join(lines) + "\n")
        with pytest.raises(FormatError):
            read_training_file(p)

    def test_missing_label_token(self, tmp_path):
        p = tmp_path / "train.txt"
        line = " ".join(["0.500000"] * 400)
        p.write_text("\n".join([line] * 3) + "\n")
        with pytest.raises(FormatError):
            read_training_file(p)

    def test_line_count_not_multiple_of_three(self, tmp_path):
        p = tmp_path / "train.txt"
        line = " ".join(["0.500000"] * 400) + " 1"
        p.write_text("\n".join([line] * 2) + "\n")
        with pytest.raises(FormatError):
            read_training_file(p)

    def test_non_numeric_token(self, tmp_path):
        p = tmp_path / "train.txt"
        line = " ".join(["0.500000"] * 399 + ["oops"]) + " 1"
        p.write_text("\n".join([line] * 3) + "\n")
        with pytest.raises(FormatError):
            read_training_file(p)
