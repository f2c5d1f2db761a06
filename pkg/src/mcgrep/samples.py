"""Seeded construct-then-solve instances.

Every builder picks the answer first (conjugating scalars, tail vectors,
cocycles) and then hides it, so a solver's output can be compared against a
known ground truth.  All randomness goes through a caller-supplied
:class:`random.Random`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .cocycles import CrossedHomData, boundary_cocycle, principal_cocycle
from .exact import ONE, ZERO, Matrix, Scalar, Vector, kernel_basis, mat_inv, vec_add, vec_scale, zero_vector
from .surface import SurfaceSig
from .symplectic import block_a, block_b, block_c
from .normal_form import tilde


def rand_scalar(rng: random.Random, nonzero: bool = False, gaussian: bool = False, bound: int = 5) -> Scalar:
    while True:
        re = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
        im = Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) if gaussian and rng.random() < 0.5 else 0
        z = Scalar(re, im)
        if z or not nonzero:
            return z


def rand_vector(rng: random.Random, n: int, gaussian: bool = False, nonzero: bool = False) -> Vector:
    while True:
        v = tuple(rand_scalar(rng, gaussian=gaussian) for _ in range(n))
        if any(v) or not nonzero:
            return v


def rand_invertible(rng: random.Random, n: int, gaussian: bool = False) -> tuple[Matrix, Matrix]:
    """(R, R^-1) with R a product of a random unit lower and a random upper triangular matrix."""
    lower = [[ONE if i == j else (rand_scalar(rng, gaussian=gaussian) if i > j else ZERO) for j in range(n)]
             for i in range(n)]
    upper = [[rand_scalar(rng, nonzero=True, gaussian=gaussian) if i == j
              else (rand_scalar(rng, gaussian=gaussian) if i < j else ZERO) for j in range(n)] for i in range(n)]
    r = Matrix.from_rows(lower) @ Matrix.from_rows(upper)
    return r, mat_inv(r)


def orthogonal_pair(rng: random.Random, m: int, gaussian: bool = False) -> tuple[Vector, Vector]:
    """(w, s) with w^T s = 0.  For m = 1 one of them is zero."""
    if m == 1:
        choice = rng.choice(("upper", "lower", "diagonal"))
        z = rand_vector(rng, 1, gaussian, nonzero=True)
        zero = zero_vector(1)
        return {"upper": (z, zero), "lower": (zero, z), "diagonal": (zero, zero)}[choice]
    w = rand_vector(rng, m, gaussian)
    if not any(w):
        return w, rand_vector(rng, m, gaussian)
    s = zero_vector(m)
    for v in kernel_basis(Matrix.row(w)):
        s = vec_add(s, vec_scale(rand_scalar(rng, gaussian=gaussian), v))
    return w, s


@dataclass(frozen=True)
class TailData:
    """w, s, T with w^T s = 0, w^T T = w^T, T s = s, T^2 - T = s w^T."""

    w: Vector
    s: Vector
    T: Matrix


def rand_tail(rng: random.Random, m: int, gaussian: bool = False) -> TailData:
    """T = R (I + s0 w0^T) R^-1 with (w, s) transported along R."""
    w0, s0 = orthogonal_pair(rng, m, gaussian)
    core = Matrix.identity(m) + Matrix.column(s0) @ Matrix.row(w0)
    if m == 1:
        return TailData(w0, s0, core)
    r, rinv = rand_invertible(rng, m, gaussian)
    t = r @ core @ rinv
    s = r.apply(s0)
    w = (Matrix.row(w0) @ rinv).row_vector(0)
    return TailData(w, s, t)


def key_lemma_canonical(g: int, tail: TailData) -> Matrix:
    """((C_1, W_1), (S_1, T))."""
    m = tail.T.rows
    n = 2 * g
    z = zero_vector(m)
    neg_w = tuple(-e for e in tail.w)
    neg_s = tuple(-e for e in tail.s)
    w_rows = [tail.w, z, neg_w, z] + [z] * (n - 4)
    s_cols = [z, tail.s, z, neg_s] + [z] * (n - 4)
    return Matrix.blocks([
        [block_c(g, 1), Matrix.from_rows(w_rows)],
        [Matrix.from_rows(s_cols).transpose(), tail.T],
    ])


@dataclass(frozen=True)
class KeyLemmaInstance:
    g: int
    m: int
    p: Scalar
    tail: TailData
    canonical: Matrix
    hidden: Matrix  # P~ canonical P~^-1


def key_lemma_instance(rng: random.Random, g: int, m: int, gaussian: bool = False) -> KeyLemmaInstance:
    tail = rand_tail(rng, m, gaussian)
    p = rand_scalar(rng, nonzero=True, gaussian=gaussian)
    y = key_lemma_canonical(g, tail)
    pt = Matrix.diag([ONE, ONE, p, p] + [ONE] * (2 * g - 4 + m))
    return KeyLemmaInstance(g, m, p, tail, y, pt @ y @ mat_inv(pt))


@dataclass(frozen=True)
class ExtraInstance:
    g: int
    m: int
    tail: TailData
    image: Matrix


def extra_instance(rng: random.Random, g: int, m: int, gaussian: bool = False) -> ExtraInstance:
    tail = rand_tail(rng, m, gaussian)
    n = 2 * g
    z = zero_vector(m)
    w_rows = [tail.w] + [z] * (n - 1)
    s_cols = [z, tail.s] + [z] * (n - 2)
    image = Matrix.blocks([
        [block_a(g, 1), Matrix.from_rows(w_rows)],
        [Matrix.from_rows(s_cols).transpose(), tail.T],
    ])
    return ExtraInstance(g, m, tail, image)


def chain_window_vectors(g: int, k: int, w: Scalar, s: Scalar) -> tuple[Vector, Vector]:
    """w (e_{2k-1} - e_{2k+1}) and s (e_{2k} - e_{2k+2}) in 1-based positions."""
    n = 2 * g
    wv = [ZERO] * n
    sv = [ZERO] * n
    wv[2 * k - 2], wv[2 * k] = w, -w
    sv[2 * k - 1], sv[2 * k + 1] = s, -s
    return tuple(wv), tuple(sv)


def chain_canonical(g: int, k: int, w: Vector, s: Vector) -> Matrix:
    """((C_k, w), (s^T, 1))."""
    n = 2 * g
    rows = [list(block_c(g, k).row_vector(i)) + [w[i]] for i in range(n)]
    rows.append(list(s) + [ONE])
    return Matrix.from_rows(rows)


@dataclass(frozen=True)
class ChainInstance:
    g: int
    p_list: tuple
    w: tuple
    s: tuple
    images: tuple  # X_1 .. X_{g-1}


def chain_instance(rng: random.Random, g: int, gaussian: bool = False) -> ChainInstance:
    p_list = tuple(rand_scalar(rng, nonzero=True, gaussian=gaussian) for _ in range(g - 1))
    diag = [ONE, ONE] + [p for p in p_list for _ in range(2)] + [ONE]
    q = Matrix.diag(diag)
    qinv = mat_inv(q)
    ws, ss, images = [], [], []
    for k in range(1, g):
        kind = rng.choice(("upper", "lower", "diagonal"))
        z = rand_scalar(rng, nonzero=True, gaussian=gaussian)
        wv, sv = chain_window_vectors(g, k, z if kind == "upper" else ZERO, z if kind == "lower" else ZERO)
        ws.append(wv)
        ss.append(sv)
        images.append(q @ chain_canonical(g, k, wv, sv) @ qinv)
    return ChainInstance(g, p_list, tuple(ws), tuple(ss), tuple(images))


def chain_2g_instance(rng: random.Random, g: int, gaussian: bool = False) -> tuple[tuple, tuple]:
    """(p_list, (Q C_k Q^-1)_k)."""
    p_list = tuple(rand_scalar(rng, nonzero=True, gaussian=gaussian) for _ in range(g - 1))
    q = Matrix.diag([ONE, ONE] + [p for p in p_list for _ in range(2)])
    qinv = mat_inv(q)
    return p_list, tuple(q @ block_c(g, k) @ qinv for k in range(1, g))


def single_violation(g: int, condition: str, role: str = "chain-1", m: int = 1) -> Matrix:
    """An image failing exactly the named condition and passing the other three.

    (i)   diag(base, 0): a zero tail keeps every commutation and braid relation
          (with m = 0, a zeroed free handle, or the zero matrix at g = 2).
    (ii)  base conjugated by U-hat on a braiding handle: B-relations survive, A-commutation does not.
    (iii) a coupling between a free handle and the braiding handles.
    (iv)  a twist that commutes with everything it meets.
    """
    base = _role_base(g, role)
    h = _braid_handle(role)
    if condition == "i":
        if m:
            return Matrix.block_diag(base, Matrix.zeros(m))
        if role == "extra" or g == 2:
            return Matrix.zeros(2 * g)
        # without a tail, zero out a handle the role never touches
        j = _free_handle(g, role)
        return Matrix.from_rows([[ZERO if r // 2 == j - 1 else v for v in row] for r, row in enumerate(base.tolist())])
    if condition == "ii":
        r = _on_handle(g, h, block_b(1, 1))
        return tilde(r @ base @ mat_inv(r), m)
    if condition == "iii":
        j = _free_handle(g, role)
        rows = base.tolist()
        if role == "extra":
            rows[0][2 * j - 1] = rows[0][2 * j - 1] + ONE
        else:
            # x_j -> x_j + (y_{h+1} - y_h)^*: stays in the A-commutant and keeps both braids
            rows[2 * j - 2][2 * h + 1] = rows[2 * j - 2][2 * h + 1] + ONE
            rows[2 * j - 2][2 * h - 1] = rows[2 * j - 2][2 * h - 1] - ONE
        return tilde(Matrix.from_rows(rows), m)
    if condition == "iv":
        return tilde(block_a(g, h) if role != "extra" else Matrix.identity(2 * g), m)
    raise ValueError(f"unknown condition {condition!r}")


def _on_handle(g: int, h: int, block: Matrix) -> Matrix:
    return Matrix.block_diag(*[block if j == h else Matrix.identity(2) for j in range(1, g + 1)])


def _role_base(g: int, role: str) -> Matrix:
    if role == "extra":
        return block_a(g, 1)
    return block_c(g, int(role.split("-")[1]))


def _braid_handle(role: str) -> int:
    return 1 if role == "extra" else int(role.split("-")[1])


def _free_handle(g: int, role: str) -> int:
    if role == "extra":
        return 2
    k = int(role.split("-")[1])
    return next(j for j in range(1, g + 1) if j not in (k, k + 1))


def principal_sample(rng: random.Random, sig: SurfaceSig, gaussian: bool = False) -> tuple[Vector, CrossedHomData]:
    w0 = rand_vector(rng, 2 * sig.g, gaussian)
    return w0, principal_cocycle(sig, w0)


def nonprincipal_sample(rng: random.Random, sig: SurfaceSig, gaussian: bool = False) -> CrossedHomData:
    """Boundary part with nonzero random coefficients plus a random principal part."""
    n_extra = sig.p + sig.r
    if n_extra == 0:
        raise ValueError("a non-principal sample needs a boundary component or puncture")
    coeffs = [rand_scalar(rng, nonzero=True, gaussian=gaussian) for _ in range(n_extra)]
    _, principal = principal_sample(rng, sig, gaussian)
    return boundary_cocycle(sig, coefficients=coeffs) + principal


def cohomologous_pair(rng: random.Random, sig: SurfaceSig, gaussian: bool = False):
    """(c1, c2, mu, w) with c1 = mu c2 + delta w and c2 not a coboundary."""
    c2 = nonprincipal_sample(rng, sig, gaussian)
    mu = rand_scalar(rng, nonzero=True, gaussian=gaussian)
    w, delta = principal_sample(rng, sig, gaussian)
    return c2.scaled(mu) + delta, c2, mu, w


def independent_pair(rng: random.Random, sig: SurfaceSig, gaussian: bool = False):
    """Two cocycles whose boundary parts are not proportional, so no (mu, w) relates them.

    Needs p + r >= 2.
    """
    n_extra = sig.p + sig.r
    if n_extra < 2:
        raise ValueError("independent boundary parts need p + r >= 2")
    while True:
        a = [rand_scalar(rng, gaussian=gaussian) for _ in range(n_extra)]
        b = [rand_scalar(rng, gaussian=gaussian) for _ in range(n_extra)]
        minors = [a[i] * b[j] - a[j] * b[i] for i in range(n_extra) for j in range(i + 1, n_extra)]
        if any(minors):
            break
    _, p1 = principal_sample(rng, sig, gaussian)
    _, p2 = principal_sample(rng, sig, gaussian)
    return boundary_cocycle(sig, coefficients=a) + p1, boundary_cocycle(sig, coefficients=b) + p2
