"""Hecke operators T(p^delta) on degree-two expansions and their eigenforms.

For a target index f and alpha + beta + gamma = delta the image is

    C'(f) = sum p^{beta(k-2) + gamma(2k+j-3)} rho(adj D_U) C(p^alpha f_U')

where U runs over R(p^beta), f_U = f.U^t = [a_U, b_U, c_U], only U with
a_U = 0 (p^{beta+gamma}) and b_U = c_U = 0 (p^gamma) contribute,
f_U' = [a_U / p^{beta+gamma}, b_U / p^gamma, c_U p^{beta-gamma}] and
D_U = diag(1, p^beta) U^t.  With the action f.A = f((X, Y) A) this is the
classical double coset sum written in the representatives of
SL2(Z) / Gamma_0(p^beta).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .algebra.arith import is_prime
from .algebra.factor import factor_rational
from .algebra.linalg import RationalMatrix, charpoly, nullspace, rref
from .algebra.numberfield import NumberField, NumberFieldElement
from .siegel.bqf import BQF, Matrix, act_on_poly, det, disc, matmul, reduce_bqf, reduced_forms, transform, transpose
from .siegel.expansion import SiegelExpansion, TruncationError, linear_combination
from .siegel.local import satoh_values_at
from .siegel.satoh import SatohBasis


# -- coset representatives ----------------------------------------------------

@dataclass(frozen=True)
class CosetReps:
    p: int
    beta: int
    reps: tuple[Matrix, ...]

    def __len__(self):
        return len(self.reps)

    def __iter__(self):
        return iter(self.reps)


def _equivalent(U: Matrix, V: Matrix, N: int) -> bool:
    """U Gamma_0(N) = V Gamma_0(N), i.e. the lower left entry of U^-1 V is 0 mod N."""
    (a, b), (c, d) = U
    # U^-1 = [[d, -b], [-c, a]]
    return (-c * V[0][0] + a * V[1][0]) % N == 0


def coset_reps(p: int, beta: int) -> CosetReps:
    """Representatives of SL2(Z) / Gamma_0(p^beta), beta <= 3."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if beta < 0 or beta > 3:
        raise ValueError("beta must lie in 0..3")
    if beta == 0:
        return CosetReps(p, 0, (((1, 0), (0, 1)),))
    q = p**beta
    reps = [((1, 0), (m, 1)) for m in range(q)]
    reps += [((p * u, -1), (1, 0)) for u in range(q // p)]
    for i, U in enumerate(reps):
        assert det(U) == 1
        for V in reps[:i]:
            if _equivalent(U, V, q):
                raise ArithmeticError(f"representatives {U} and {V} coincide")
    return CosetReps(p, beta, tuple(reps))


# -- the Hecke image --------------------------------------------------------------

def _terms(f: BQF, p: int, delta: int):
    """Yield (power of p, adj(D_U), index) for every contributing term."""
    for alpha in range(delta + 1):
        for beta in range(delta - alpha + 1):
            gamma = delta - alpha - beta
            pa, pb, pg = p**alpha, p**beta, p**gamma
            for U in coset_reps(p, beta):
                a, b, c = transform(f, transpose(U))
                if a % (pb * pg) or b % pg or c % pg:
                    continue
                if beta >= gamma:
                    c2 = c * p ** (beta - gamma)
                else:
                    c2, r = divmod(c, p ** (gamma - beta))
                    if r:
                        raise ArithmeticError("non-integral index in the Hecke sum")
                g = (pa * (a // (pb * pg)), pa * (b // pg), pa * c2)
                # adj(diag(1, p^beta) U^t) = U^{-t} diag(p^beta, 1)
                (u0, u1), (u2, u3) = U
                uinvt = ((u3, -u2), (-u1, u0))
                adj = matmul(uinvt, ((pb, 0), (0, 1)))
                yield (beta, gamma), adj, g


def demanded_indices(f: BQF, p: int, delta: int) -> list[BQF]:
    return [g for _, _, g in _terms(f, p, delta)]


def check_bounds(F: SiegelExpansion, targets: Sequence[BQF], p: int, delta: int) -> None:
    for f in targets:
        for g in demanded_indices(tuple(f), p, delta):
            red = reduce_bqf(g)[0]
            if not F.in_bounds(red) and red not in F.extra:
                raise TruncationError(
                    f"insufficient truncation: index {list(g)} (reduced {list(red)}) needed for "
                    f"T({p}^{delta}) at {list(f)}, have D={F.D}, S={F.S}"
                )


def hecke_image(F: SiegelExpansion, p: int, delta: int, targets: Sequence[BQF]) -> dict:
    """Coefficients of T(p^delta) F at the given indices."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if delta not in (1, 2, 3):
        raise ValueError("delta must be 1, 2 or 3")
    targets = [tuple(f) for f in targets]
    check_bounds(F, targets, p, delta)
    k, j = F.k, F.j
    out = {}
    for f in targets:
        acc = 0 if j == 0 else [0, 0, 0]
        for (beta, gamma), adj, g in _terms(f, p, delta):
            w = p ** (beta * (k - 2) + gamma * (2 * k + j - 3))
            v = F.raw_at(g)
            if j == 0:
                acc = acc + w * v
            else:
                v = act_on_poly(adj, v)
                acc = [s + w * x for s, x in zip(acc, v)]
        out[f] = F._scaled(acc if j == 0 else tuple(acc))
    return out


# -- T(2) on a basis --------------------------------------------------------------

def _components(v, j):
    return [v] if j == 0 else list(v)


def pivot_candidates(forms: Sequence[SiegelExpansion], p: int = 2) -> list[tuple[BQF, int]]:
    """(index, component) pairs whose T(p) images are computable."""
    D = min(F.D for F in forms)
    j = forms[0].j
    out = []
    for g in reduced_forms(D // (p * p), 0):
        if disc(g) == 0:
            continue
        for comp in range(1 if j == 0 else 3):
            out.append((g, comp))
    return out


def t2_matrix(basis: SatohBasis | Sequence[SiegelExpansion], seed: int | None = None, p: int = 2) -> RationalMatrix:
    """Matrix of T(p) on the basis (row i = coordinates of T(p) F_i).

    Pivots (Q, component) are chosen greedily so that each raises the rank of
    N = [C_{F_i}(Q)]; then T = M N^{-1} with M the image coefficients.  A seed
    shuffles the candidate order.
    """
    forms = basis.forms if isinstance(basis, SatohBasis) else list(basis)
    n = len(forms)
    cands = pivot_candidates(forms, p)
    if seed is not None:
        random.Random(seed).shuffle(cands)
    chosen: list[tuple[BQF, int]] = []
    cols: list[list[Fraction]] = []
    rank = 0
    for g, comp in cands:
        col = [Fraction(_components(F.coefficient_at(g), F.j)[comp]) for F in forms]
        if not any(col):
            continue
        trial = cols + [col]
        r = len(rref(trial)[1])
        if r > rank:
            cols, rank = trial, r
            chosen.append((g, comp))
            if rank == n:
                break
    if rank < n:
        raise ArithmeticError(f"pivot matrix reaches rank {rank} < {n} within D={min(F.D for F in forms)}")
    N = RationalMatrix([[cols[c][i] for c in range(n)] for i in range(n)])
    targets = sorted({g for g, _ in chosen})
    rows = []
    for F in forms:
        img = hecke_image(F, p, 1, targets)
        rows.append([Fraction(_components(img[g], F.j)[comp]) for g, comp in chosen])
    M = RationalMatrix(rows)
    return M * N.inverse()


# -- eigen systems -------------------------------------------------------------

@dataclass
class EigenSystem:
    """One Galois orbit of eigenforms, as a vector over K = Q[x]/(factor)."""

    weight: tuple[int, int]
    field: NumberField
    coordinates: list[NumberFieldElement]
    cuspidal: bool
    forms: list[SiegelExpansion] = field(repr=False, default_factory=list)
    labels: list[str] = field(default_factory=list)
    recipes: list = field(repr=False, default_factory=list)
    eigenvalues: dict[int, NumberFieldElement] = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return self.field.degree

    def coefficient_at(self, g: BQF):
        """C_F(g) as a field element (j = 0) or triple of field elements."""
        K = self.field
        vals = [F.coefficient_at(g) for F in self.forms]
        if self.weight[1] == 0:
            return sum((c * v for c, v in zip(self.coordinates, vals)), K.zero())
        return tuple(sum((c * v[i] for c, v in zip(self.coordinates, vals)), K.zero()) for i in range(3))

    def expansion(self) -> SiegelExpansion:
        """Field-valued expansion of the orbit representative."""
        return linear_combination(self.coordinates, self.forms)

    def conjugate_roots(self):
        """Complex images of the generator, one per conjugate eigenform."""
        return list(self.field.complex_roots)


def eigensystems(basis: SatohBasis, seed: int | None = None) -> list[EigenSystem]:
    """Eigenforms of T(2), one per irreducible factor of its characteristic polynomial."""
    T = t2_matrix(basis, seed)
    n = len(basis)
    phi = basis.phi_matrix()
    out = []
    for g, e in factor_rational(charpoly(T)):
        if e != 1:
            raise ArithmeticError(f"T(2) has repeated factor {g}; eigenspaces are not separated")
        K = NumberField(g, check=False)
        lam = K.gen()
        rows = [[K(T[i, c]) - (lam if i == c else 0) for i in range(n)] for c in range(n)]
        kernel = nullspace(rows, one=K.one(), zero=K.zero())
        if len(kernel) != 1:
            raise ArithmeticError("eigenspace is not one-dimensional")
        v = kernel[0]
        lead = next(c for c in v if c)
        v = [c / lead for c in v]
        cusp = all(
            not sum((v[i] * phi[i, c] for i in range(n)), K.zero()) for c in range(len(phi.rows[0]) if phi.rows else 0)
        )
        E = EigenSystem((basis.k, 2), K, v, cusp, list(basis.forms), list(basis.labels), list(basis.recipes))
        E.eigenvalues[2] = lam
        out.append(E)
    return out


def eigensystem_from_form(F: SiegelExpansion) -> EigenSystem:
    """Wrap a single rational eigenform (for example E4 or chi10)."""
    K = NumberField.rationals()
    return EigenSystem((F.k, F.j), K, [K.one()], F.is_cusp(), [F], ["F"])


def supplement(forms: Sequence[SiegelExpansion], recipes, targets: Sequence[BQF], p: int, delta: int) -> None:
    """Compute the out-of-bounds coefficients T(p^delta) needs at the targets.

    Needs the basis recipes; the values are stored in each form's ``extra``.
    """
    missing = set()
    for f in targets:
        for g in demanded_indices(tuple(f), p, delta):
            red = reduce_bqf(g)[0]
            if any(not F.in_bounds(red) and red not in F.extra for F in forms):
                missing.add(red)
    if not missing:
        return
    if not recipes:
        return  # hecke_image reports the shortfall
    values = satoh_values_at(recipes, sorted(missing))
    for F, vals in zip(forms, values):
        for g, v in vals.items():
            F.extra[g] = v / F.scale if F.j == 0 else tuple(x / F.scale for x in v)


def _extraction_indices(E: EigenSystem, p: int, delta: int, count: int = 2):
    D = min(F.D for F in E.forms)
    limit = D if E.recipes else D // p ** (2 * delta)
    found = []
    for g in reduced_forms(limit, 0):
        if disc(g) == 0:
            continue
        v = E.coefficient_at(g)
        comps = _components(v, E.weight[1])
        comp = next((i for i, x in enumerate(comps) if x), None)
        if comp is None:
            continue
        found.append((g, comp))
        if len(found) == count:
            break
    return found


def eigenvalue(E: EigenSystem, p: int, delta: int) -> NumberFieldElement:
    """lambda_{p^delta}(E) = C'(Q) / C(Q), confirmed at a second index."""
    key = p**delta
    if key in E.eigenvalues:
        return E.eigenvalues[key]
    idx = _extraction_indices(E, p, delta)
    if len(idx) < 2:
        D = min(F.D for F in E.forms)
        raise TruncationError(
            f"insufficient truncation: fewer than two usable indices of disc <= {D // p ** (2 * delta)} for T({key})"
        )
    targets = [g for g, _ in idx]
    supplement(E.forms, E.recipes, targets, p, delta)
    images = [hecke_image(F, p, delta, targets) for F in E.forms]
    K = E.field
    lams = []
    for g, comp in idx:
        num = sum((c * Fraction(_components(img[g], E.weight[1])[comp]) for c, img in zip(E.coordinates, images)), K.zero())
        den = _components(E.coefficient_at(g), E.weight[1])[comp]
        lams.append(num / den)
    if lams[0] != lams[1]:
        raise ArithmeticError(f"eigenvalue of T({key}) differs between {idx[0][0]} and {idx[1][0]}")
    E.eigenvalues[key] = lams[0]
    return lams[0]


# -- local data at p -------------------------------------------------------------

@dataclass(frozen=True)
class LocalEigenData:
    """lambda_p, lambda_{p^2} and the split of T(p^2) into T_0, T_1, T_2."""

    p: int
    k: int
    j: int
    lambda_p: object
    lambda_p2: object
    lambda0: object
    lambda1: object
    lambda2: int

    @classmethod
    def from_eigenvalues(cls, p: int, k: int, j: int, lp, lp2) -> "LocalEigenData":
        l2 = p ** (2 * k + j - 6)
        # lp^2 = l0 + (p+1) l1 + (p^2+1)(p+1) l2 and lp2 = l0 + l1 + l2
        l1 = (lp * lp - (p * p + 1) * (p + 1) * l2 - (lp2 - l2)) / p
        l0 = lp2 - l2 - l1
        return cls(p, k, j, lp, lp2, l0, l1, l2)

    def relations_hold(self) -> bool:
        p = self.p
        a = self.lambda0 + (p + 1) * self.lambda1 + (p * p + 1) * (p + 1) * self.lambda2
        b = self.lambda0 + self.lambda1 + self.lambda2
        return a == self.lambda_p * self.lambda_p and b == self.lambda_p2


def local_data(E: EigenSystem, p: int) -> LocalEigenData:
    k, j = E.weight
    return LocalEigenData.from_eigenvalues(p, k, j, eigenvalue(E, p, 1), eigenvalue(E, p, 2))


def mu_siegel(d: LocalEigenData, k: int, j: int, delta: int):
    """mu_{p^delta} from lambda_p and lambda_{p^2}."""
    p = d.p
    lp, lp2 = d.lambda_p, d.lambda_p2
    w = p ** (2 * k + j - 4)
    if delta == 1:
        return lp
    if delta == 2:
        return 2 * lp2 - lp * lp + 2 * w
    if delta == 3:
        return (3 * lp2 - 2 * lp * lp + 3 * (p + 1) * w) * lp
    raise ValueError("delta must be 1, 2 or 3")


def predicted_lambda_cube(d: LocalEigenData, k: int, j: int):
    """lambda_{p^3} forced by the rationality of sum_n lambda_{p^n} X^n.

    The series equals (1 - p^{2k+j-4} X^2) / Q(X) with Q the spin polynomial.
    """
    p = d.p
    w = p ** (2 * k + j - 4)
    lp, lp2 = d.lambda_p, d.lambda_p2
    return 2 * lp * lp2 - lp * lp * lp + (p + 1) * w * lp


def mu_cube_from_lambda_cube(d: LocalEigenData, lp3, k: int, j: int):
    """mu_{p^3} written through lambda_p and a directly computed lambda_{p^3}."""
    p = d.p
    w = p ** (2 * k + j - 4)
    lp = d.lambda_p
    return (3 * lp3 - lp * lp * lp + 3 * (p + 1) * w * lp) / 2


def spinor_polynomial(d: LocalEigenData, k: int, j: int) -> list:
    """Coefficients (leading first) of the spin Euler factor at p."""
    p = d.p
    lp, lp2 = d.lambda_p, d.lambda_p2
    return [1, -lp, lp * lp - lp2 - p ** (2 * k + j - 4), -(p ** (2 * k + j - 3)) * lp, p ** (4 * k + 2 * j - 6)]


def _embeddings(x):
    if isinstance(x, NumberFieldElement):
        return x.field
    return None


def rp_check(d: LocalEigenData, k: int, j: int, p: int | None = None, tolerance_bits: int = 40) -> bool:
    """All roots of the spin polynomial lie on |z| = p^{(2k+j-3)/2}, in every embedding."""
    p = d.p if p is None else p
    coeffs = spinor_polynomial(d, k, j)
    K = next((f for f in map(_embeddings, coeffs) if f is not None), None)
    dps = max(60, 2 * tolerance_bits // 3 + 40, len(str(p ** (4 * k + 2 * j))) + 40)
    with mpmath.workdps(dps):
        roots = [None] if K is None else _field_roots(K, dps)
        radius = mpmath.mpf(p) ** (mpmath.mpf(2 * k + j - 3) / 2)
        tol = radius * mpmath.mpf(2) ** (-tolerance_bits)
        for root in roots:
            cs = [_embed(c, root) for c in coeffs]
            try:
                zs = mpmath.polyroots(cs, maxsteps=500, extraprec=4 * dps)
            except mpmath.libmp.NoConvergence as exc:
                raise ArithmeticError(f"spin polynomial roots did not converge at p={p}") from exc
            if any(abs(abs(z) - radius) >= tol for z in zs):
                return False
    return True


def _field_roots(K: NumberField, dps: int):
    cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(K.modulus.coeffs)]
    return mpmath.polyroots(cs, maxsteps=500, extraprec=4 * dps)


def _embed(c, root):
    if isinstance(c, NumberFieldElement):
        return sum(
            (mpmath.mpf(x.numerator) / x.denominator * root**i for i, x in enumerate(c.coefficient_list())),
            mpmath.mpf(0),
        )
    c = Fraction(c)
    return mpmath.mpf(c.numerator) / c.denominator
