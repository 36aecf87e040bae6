"""Dense complex tensor plumbing on V = C^2 and V^(2) = Sym^2 V.

Matrices are plain complex ``numpy`` arrays stored as ``M[out, in]``: the
column carries the upper (input) multi-index and the row the lower (output)
one.  Multi-indices over tensor factors are flattened row-major, exactly as
``np.kron`` and ``np.ravel_multi_index`` do.

Basis orders: V is (v+, v-) and V^(2) is (v_2, v_0, v_-2) with
v_0 = (v+ (x) v- + v- (x) v+)/2.
"""

import numpy as np

from .errors import ArgumentError

SPINS = (1, -1)
WEIGHTS = (2, 0, -2)


def spin_index(eps):
    """Position of v_eps in the basis of V."""
    try:
        return SPINS.index(eps)
    except ValueError:
        raise ArgumentError(f"spin must be +1 or -1, got {eps!r}") from None


def weight_index(mu):
    """Position of v_mu in the basis of V^(2)."""
    try:
        return WEIGHTS.index(mu)
    except ValueError:
        raise ArgumentError(f"weight must be 2, 0 or -2, got {mu!r}") from None


def flatten(multi, dims):
    return int(np.ravel_multi_index(tuple(multi), tuple(dims)))


def unflatten(flat, dims):
    return tuple(int(i) for i in np.unravel_index(flat, tuple(dims)))


ID2 = np.eye(2, dtype=complex)
ID3 = np.eye(3, dtype=complex)
ID4 = np.eye(4, dtype=complex)

SIGMA_Y = np.array([[0, -1j], [1j, 0]])


def flip(d):
    """The swap a (x) b -> b (x) a on C^d (x) C^d."""
    out = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            out[j * d + i, i * d + j] = 1
    return out


P = flip(2)
P2 = flip(3)
PI = (P + ID4) / 2

# iota: V^(2) -> V (x) V, with the 1/2 carried by v_0
IOTA = np.zeros((4, 3), dtype=complex)
IOTA[0, 0] = 1
IOTA[1, 1] = IOTA[2, 1] = 0.5
IOTA[3, 2] = 1

# pi: V (x) V -> V^(2), unit coefficients; PROJ @ IOTA = 1, IOTA @ PROJ = PI
PROJ = np.zeros((3, 4), dtype=complex)
PROJ[0, 0] = 1
PROJ[1, 1] = PROJ[1, 2] = 1
PROJ[2, 3] = 1


def sym_embed(v):
    return IOTA @ np.asarray(v, dtype=complex)


def sym_restrict(w):
    return PROJ @ np.asarray(w, dtype=complex)


def kron(*mats):
    out = np.eye(1, dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def permute_factors(m, dims, perm):
    """Reorder the tensor factors of an operator.

    Factor ``k`` of the result is factor ``perm[k]`` of ``m``.
    """
    dims = tuple(dims)
    n = len(dims)
    t = np.asarray(m).reshape(dims + dims)
    axes = list(perm) + [n + p for p in perm]
    size = int(np.prod(dims))
    return t.transpose(axes).reshape(size, size)


def embed(op, targets, dims):
    """Act with ``op`` on the factors ``targets`` (in that order) of a product space."""
    dims = tuple(dims)
    targets = tuple(targets)
    rest = [i for i in range(len(dims)) if i not in targets]
    order = list(targets) + rest
    rest_size = int(np.prod([dims[i] for i in rest])) if rest else 1
    full = np.kron(op, np.eye(rest_size, dtype=complex))
    return permute_factors(full, [dims[i] for i in order], np.argsort(order))


def partial_transpose_first(m, d1, d2):
    """Transpose with respect to the first tensor factor of C^d1 (x) C^d2."""
    m = np.asarray(m)
    if m.shape != (d1 * d2, d1 * d2):
        raise ArgumentError(f"matrix of shape {m.shape} does not act on {d1}x{d2}")
    return m.reshape(d1, d2, d1, d2).transpose(2, 1, 0, 3).reshape(d1 * d2, d1 * d2)


def residual(a, b):
    """max|a - b| scaled by max(1, max|a|, max|b|)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ArgumentError(f"shape mismatch {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    scale = max(1.0, float(np.abs(a).max()), float(np.abs(b).max()))
    return float(np.abs(a - b).max()) / scale
