"""Seeded spectral-parameter sampling away from the bracket zero lattices."""

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, SamplingError

RE_WINDOW = (0.05, 0.95)
IM_WINDOW = (-0.1, 0.1)
MIN_DISTANCE = 0.05
MAX_REDRAWS = 1000

# (coefficient of u, coefficient of v, shift): the combination must stay away
# from the zeros of [.], i.e. from r Z + r tau Z
DEFAULT_FORMS = (
    (1, 0, 0), (1, 0, 1), (1, 0, -1),
    (0, 1, 0), (0, 1, 1), (0, 1, -1),
    (1, -1, 0), (1, -1, 1), (1, -1, -1), (1, -1, -2),
)


@dataclass(frozen=True)
class Guards:
    forms: tuple = DEFAULT_FORMS
    r: float = 6.0
    tau: complex = 1.2j
    distance: float = MIN_DISTANCE

    def lattice_distance(self, w):
        """Distance from w to the nearest point of r Z + r tau Z."""
        w1, w2 = float(self.r), complex(self.r * self.tau)
        basis = np.array([[w1, w2.real], [0.0, w2.imag]])
        alpha, beta = np.linalg.solve(basis, [w.real, w.imag])
        best = np.inf
        for i in (np.floor(alpha), np.floor(alpha) + 1):
            for j in (np.floor(beta), np.floor(beta) + 1):
                best = min(best, abs(w - i * w1 - j * w2))
        return best

    def admits(self, u, v):
        return all(self.lattice_distance(a * u + b * v + s) >= self.distance
                   for a, b, s in self.forms)


def _draw(rng):
    re = rng.uniform(*RE_WINDOW, size=2)
    im = rng.uniform(*IM_WINDOW, size=2)
    return complex(re[0], im[0]), complex(re[1], im[1])


def point_stream(seed, guards=None):
    """Endless deterministic stream of guarded (u, v) pairs."""
    guards = Guards() if guards is None else guards
    rng = np.random.default_rng(seed)
    while True:
        for _ in range(MAX_REDRAWS):
            u, v = _draw(rng)
            if guards.admits(u, v):
                yield u, v
                break
        else:
            raise SamplingError(f"no admissible point in {MAX_REDRAWS} draws")


def sample_points(seed, n, guards=None):
    if n < 1:
        raise ArgumentError(f"need at least one point, got n={n}")
    stream = point_stream(seed, guards)
    return [next(stream) for _ in range(n)]
