import io

import numpy as np
import pytest
import scipy.io

from sinkrand import io as sio
from sinkrand.randcorr import randcorr
from sinkrand.rng import RandomSource


@pytest.fixture
def R():
    return randcorr(6, RandomSource(17)).R


def test_csv_round_trip_exact(R):
    buf = io.StringIO()
    sio.write_csv(R, buf)
    buf.seek(0)
    assert np.array_equal(sio.read_csv(buf), R)


def test_csv_p1():
    buf = io.StringIO()
    sio.write_csv(np.ones((1, 1)), buf)
    assert buf.getvalue() == "1\n"


def test_matrix_market_round_trip(R):
    buf = io.StringIO()
    sio.write_matrix_market(R, buf)
    text = buf.getvalue()
    lines = text.splitlines()
    assert lines[0] == "%%MatrixMarket matrix array real symmetric"
    assert lines[1] == "6 6"
    assert len(lines) == 2 + 21
    assert np.array_equal(sio.read_matrix_market(io.StringIO(text)), R)


def test_matrix_market_readable_by_scipy(R, tmp_path):
    path = tmp_path / "r.mtx"
    with open(path, "w") as fh:
        sio.write_matrix_market(R, fh)
    assert np.array_equal(np.asarray(scipy.io.mmread(str(path))), R)


def test_matrix_market_reads_scipy_output(R, tmp_path):
    path = tmp_path / "s.mtx"
    scipy.io.mmwrite(str(path), R, symmetry="symmetric", precision=17)
    with open(path) as fh:
        assert np.allclose(sio.read_matrix_market(fh), R, rtol=1e-15, atol=0)


def test_matrix_market_rejects_other_headers():
    with pytest.raises(ValueError):
        sio.read_matrix_market(io.StringIO("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 1\n"))
    with pytest.raises(ValueError):
        sio.read_matrix_market(io.StringIO("%%MatrixMarket matrix array real symmetric\n2 2\n1\n"))


def test_csv_and_mm_agree_to_15_digits(R):
    a, b = io.StringIO(), io.StringIO()
    sio.write_csv(R, a)
    sio.write_matrix_market(R, b)
    a.seek(0)
    b.seek(0)
    x, y = sio.read_csv(a), sio.read_matrix_market(b)
    assert np.allclose(x, y, rtol=1e-15, atol=0)


def test_jsonl_round_trip(R):
    buf = io.StringIO()
    sio.write_matrix_jsonl(R, buf, p=6, seed=17, method="rejection")
    lines = buf.getvalue().splitlines()
    assert len(lines) == 6
    buf.seek(0)
    assert np.array_equal(sio.read_matrix_jsonl(buf), R)


def test_variates_have_enough_digits():
    buf = io.StringIO()
    sio.write_variates([1.5, np.pi], buf)
    first, second = buf.getvalue().splitlines()
    assert float(second) == np.pi
    assert len(second.replace(".", "").lstrip("0")) >= 15
    assert float(first) == 1.5
