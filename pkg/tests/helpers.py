"""Deterministic matrix generators and small assertion utilities."""

import contextlib
import io

import numpy as np


def random_orthogonal(n, rng):
    q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    return q


def random_normal_matrix(seed):
    """Normal matrix built as Q.T @ D @ Q from random block data.

    Dimension 2..12 derived from the seed.  Returns (matrix, expected
    eigenvalues as a conjugate-closed list of complex numbers).
    """
    rng = np.random.default_rng(seed)
    n = 2 + seed % 11
    n_blocks = int(rng.integers(0, n // 2 + 1))
    n_real = n - 2 * n_blocks
    d = np.zeros((n, n))
    expected = []
    for i in range(n_real):
        val = rng.uniform(-2.0, 2.0)
        d[i, i] = val
        expected.append(complex(val))
    for j in range(n_blocks):
        i = n_real + 2 * j
        alpha = rng.uniform(-2.0, 2.0)
        beta = rng.uniform(0.1, 2.0)
        d[i, i] = alpha
        d[i + 1, i + 1] = alpha
        d[i, i + 1] = beta
        d[i + 1, i] = -beta
        expected.append(complex(alpha, beta))
        expected.append(complex(alpha, -beta))
    q = random_orthogonal(n, rng)
    return q.T @ d @ q, expected


def random_spd(seed, max_half=16):
    """SPD matrix G.T @ G + I of even dimension 2..2*max_half."""
    rng = np.random.default_rng(seed)
    n = 2 * (1 + seed % max_half)
    g = rng.normal(size=(n, n))
    return g.T @ g + np.eye(n)


def random_skew(seed):
    """Skew matrix G - G.T of dimension 2..12."""
    rng = np.random.default_rng(seed)
    n = 2 + seed % 11
    g = rng.normal(size=(n, n))
    return g - g.T


def random_unit(n, rng):
    v = rng.normal(size=n)
    return v / np.linalg.norm(v)


def assert_multiset_close(xs, ys, tol):
    """Both complex multisets must match entrywise after a canonical sort."""
    assert len(xs) == len(ys)
    xs = sorted(xs, key=lambda z: (z.real, z.imag))
    ys = sorted(ys, key=lambda z: (z.real, z.imag))
    for x, y in zip(xs, ys):
        assert abs(x - y) <= tol, f"{x} vs {y} differ by {abs(x - y):.3e}"


def run_cli(argv):
    """Run the CLI in-process; returns (exit_code, stdout_text)."""
    from matcanon.cli import main

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()
