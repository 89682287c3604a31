"""Cohomology H*(A, k) on a resolution, with cup products and brackets via homotopy liftings.

For an m-cocycle f a homotopy lifting is a degree m-1 map ``psi_f: P -> P`` with

    del(psi_f) = (f (x) 1 - 1 (x) f) Delta

and ``mu psi_f - (-1)^(m+1) f psi`` a coboundary, where ``psi`` solves the
counit equation of the diagonal.  The bracket of an m-cocycle f and an
n-cocycle g is then ``f psi_g - (-1)^((m-1)(n-1)) g psi_f``.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, field

from gerstenhaber.complexes import (
    CochainComplex,
    ComplexError,
    GradedMap,
    HomSystem,
    LiftingError,
    cached_hom,
    cochain_map,
    contract_left,
    contract_right,
    hom_differential,
    matrix_json,
    random_graded_map,
    sign,
    unit_complex,
)
from gerstenhaber.exactla import Matrix
from gerstenhaber.hopf import HopfAlgebra, ModuleRep, taft, tensor_hopf
from gerstenhaber.resolutions import (
    DiagonalData,
    free_resolution,
    generic_diagonal,
    group_zp_resolution,
    symmetrize_diagonal,
    taft_diagonal,
    taft_resolution,
    tensor_resolution_and_diagonal,
)


class BracketError(ComplexError):
    pass


@dataclass
class Cocycle:
    degree: int
    comp: Matrix  # P_degree -> k
    P: object
    label: str = ""

    def __post_init__(self):
        d = self.P.d(self.degree + 1)
        if not (self.comp @ d).is_zero():
            raise BracketError(f"{self.label or 'cochain'} is not a cocycle in degree {self.degree}")

    def as_map(self) -> GradedMap:
        return cochain_map(self.P, self.degree, self.comp, self._unit(), name=self.label or "f")

    def _unit(self):
        U = getattr(self.P, "_unit_complex", None)
        if U is None:
            U = unit_complex(self.P.unit)
            self.P._unit_complex = U
        return U

    def scale(self, raw) -> "Cocycle":
        return Cocycle(self.degree, self.comp.scale(raw), self.P, self.label)


@dataclass
class CohomologyBasis:
    complex: CochainComplex
    dims: list[int]
    classes: dict[int, list[Cocycle]]

    def coordinates(self, f: Cocycle) -> dict | None:
        return self.complex.class_coordinates(f.comp, f.degree)

    def is_zero_class(self, f: Cocycle) -> bool:
        return self.complex.coboundary_witness(f.comp, f.degree) is not None

    def all_classes(self, lo: int = 1, hi: int | None = None) -> list[Cocycle]:
        hi = self.complex.maxdeg if hi is None else hi
        return [c for m in range(lo, hi + 1) for c in self.classes.get(m, [])]


def cohomology_basis(P, M: ModuleRep | None = None, maxdeg: int | None = None) -> CohomologyBasis:
    """Basis of ``H^l(Hom_A(P, M))`` for ``l <= maxdeg`` (``M`` defaults to the unit module)."""
    M = P.unit if M is None else M
    maxdeg = P.N - 1 if maxdeg is None else maxdeg
    C = CochainComplex(P, M, maxdeg)
    classes = {}
    for l in range(maxdeg + 1):
        reps = C.representatives(l)
        if M is P.unit:
            classes[l] = [Cocycle(l, r, P, f"h{l}.{k}") for k, r in enumerate(reps)]
        else:
            classes[l] = reps
    return CohomologyBasis(C, C.dims(), classes)


def cup(f: Cocycle, g: Cocycle, D: DiagonalData) -> Cocycle:
    """``(f (x) g) Delta`` with the Koszul sign ``(-1)^(|g| |f|)`` on the left factor."""
    m, n = f.degree, g.degree
    if m + n > D.delta.top:
        raise BracketError(f"cup product in degree {m + n} exceeds the diagonal's range {D.delta.top}")
    F = D.P.field
    PP = D.PP
    b = PP.block(m + n, m)
    comp = D.delta[m + n]
    rows = comp.data[b.offset:b.offset + b.dim]
    part = Matrix(F, b.dim, comp.cols, rows)
    fg = f.comp.kron(g.comp)
    if (m * n) % 2:
        fg = -fg
    return Cocycle(m + n, fg @ part, D.P, f"({f.label}*{g.label})")


# ---------------------------------------------------------------------------
# homotopy liftings
# ---------------------------------------------------------------------------


@dataclass
class HomotopyLifting:
    cocycle: Cocycle
    psi_f: GradedMap
    side_witness: Matrix | None
    top: int
    certificates: dict = field(default_factory=dict)


def lifting_rhs(f: Cocycle, D: DiagonalData) -> GradedMap:
    """``(f (x) 1 - 1 (x) f) Delta`` as a degree-m map ``P -> P``."""
    fm = f.as_map()
    left = D.delta.then(contract_left(fm, D.PP))
    right = D.delta.then(contract_right(fm, D.PP))
    return left - right


def _side_terms(f: Cocycle, D: DiagonalData, psi_f: GradedMap) -> Matrix:
    """``mu psi_f - (-1)^(m+1) f psi`` on ``P_{m-1}``."""
    m = f.degree
    P = D.P
    lhs = P.aug @ psi_f[m - 1]
    rhs = f.comp @ D.psi[m - 1]
    return lhs - rhs if sign(m + 1) > 0 else lhs + rhs


def certify_lifting(L: HomotopyLifting, D: DiagonalData) -> dict:
    f, psi_f = L.cocycle, L.psi_f
    m = f.degree
    P = D.P
    resid = hom_differential(psi_f) - lifting_rhs(f, D).restrict(L.top)
    bad = resid.first_nonzero(L.top)
    if bad is not None:
        raise BracketError(f"lifting equation fails in degree {bad}")
    cert = {"equation": True, "top": L.top}
    side = _side_terms(f, D, psi_f)
    if m >= 2:
        w = L.side_witness
        ok = w is not None and side == w @ P.d(m - 1)
    else:
        ok = side.is_zero()
    if not ok:
        raise BracketError("side condition is not certified by the witness")
    cert["side_condition"] = True
    cert["psi_f_zero"] = psi_f.is_zero()
    L.certificates.update(cert)
    return cert


def solve_homotopy_lifting(f: Cocycle, D: DiagonalData, top: int | None = None,
                           zero_if_possible: bool = True, seed: int | None = None) -> HomotopyLifting:
    """Solve for ``psi_f`` degree by degree, side condition jointly with the lowest components.

    ``zero_if_possible`` returns ``psi_f = 0`` when that is a certified solution.
    ``seed`` adds a random boundary ``del(K)`` (degree m-2) to the solution.
    """
    m = f.degree
    if m < 1:
        raise BracketError("homotopy liftings are only used for positive-degree cocycles")
    P = D.P
    F = P.field
    top = D.top if top is None else min(top, D.top)
    rhs = lifting_rhs(f, D)
    hdeg = m - 1
    s = sign(hdeg)

    if zero_if_possible and seed is None:
        zero = GradedMap(P, P, hdeg, {}, top, "psi_f")
        side = _side_terms(f, D, zero)
        w = _coboundary(D, side, m - 1) if m >= 2 else (Matrix.zeros(F, 1, 0) if side.is_zero() else None)
        if rhs.is_zero(top) and w is not None:
            L = HomotopyLifting(f, zero, w if m >= 2 else None, top)
            certify_lifting(L, D)
            return L

    comps = {}
    witness = None
    if top < m:
        raise BracketError(f"range {top} too short for a degree-{m} lifting")
    # joint step: psi_f[m-1]: P_{m-1} -> P_0, psi_f[m]: P_m -> P_1, witness h: P_{m-2} -> k
    sys = HomSystem(F)
    u0 = sys.unknown(cached_hom(P.modules[m - 1], P.modules[0]))
    u1 = sys.unknown(cached_hom(P.modules[m], P.modules[1]))
    sys.equation([(u1, P.d(1), None, 1), (u0, None, P.d(m), -s)], rhs[m])
    side_rhs = f.comp @ D.psi[m - 1]
    if sign(m + 1) < 0:
        side_rhs = -side_rhs
    side = [(u0, P.aug, None, 1)]
    if m >= 2:
        uh = sys.unknown(cached_hom(P.modules[m - 2], P.unit))
        side.append((uh, None, P.d(m - 1), -1))
    sys.equation(side, side_rhs)
    sol = sys.solve()
    if sol is None:
        raise LiftingError(f"no homotopy lifting for {f.label}: joint step in degree {m}", m)
    comps[m - 1], comps[m] = sol[0], sol[1]
    if m >= 2:
        witness = sol[2]
    for i in range(m + 1, top + 1):
        r = rhs[i]
        back = comps[i - 1] @ P.d(i)
        r = r + back if s > 0 else r - back
        sys = HomSystem(F)
        u = sys.unknown(cached_hom(P.modules[i], P.modules[i - hdeg]))
        sys.equation([(u, P.d(i - hdeg), None, 1)], r)
        sol = sys.solve()
        if sol is None:
            raise LiftingError(f"no homotopy lifting for {f.label} in degree {i}", i)
        comps[i] = sol[0]
    psi_f = GradedMap(P, P, hdeg, comps, top, "psi_f")
    if seed is not None and m >= 2:
        K = random_graded_map(P, P, m - 2, top, random.Random(seed))
        dK = hom_differential(K)
        psi_f = psi_f + dK
        psi_f.name = "psi_f"
        # mu del(K) = (-1)^(m-1) (mu K) d, so the witness moves by that coboundary
        muK = P.aug @ K[m - 2]
        witness = witness + muK if sign(m - 1) > 0 else witness - muK
    L = HomotopyLifting(f, psi_f, witness, top)
    certify_lifting(L, D)
    return L


def _coboundary(D: DiagonalData, h: Matrix, l: int) -> Matrix | None:
    C = _cochains(D)
    return C.coboundary_witness(h, l)


def _cochains(D: DiagonalData) -> CochainComplex:
    C = getattr(D, "_cochains", None)
    if C is None:
        C = D._cochains = CochainComplex(D.P, D.P.unit, D.P.N - 1)
    return C


# ---------------------------------------------------------------------------
# the bracket
# ---------------------------------------------------------------------------


@dataclass
class BracketResult:
    f: Cocycle
    g: Cocycle
    cochain: Matrix
    degree: int
    is_cocycle: bool
    zero_class: bool
    witness: Matrix | None
    coordinates: dict | None = None

    def to_json(self) -> dict:
        F = self.cochain.field
        return {
            "degree": self.degree,
            "cochain": matrix_json(self.cochain),
            "cocycle": self.is_cocycle,
            "class": "zero" if self.zero_class else "nonzero",
            "witness": matrix_json(self.witness) if self.witness is not None else None,
            "coordinates": {str(k): F.format(v) for k, v in sorted((self.coordinates or {}).items())},
        }


def bracket_cochain(Lf: HomotopyLifting, Lg: HomotopyLifting) -> Matrix:
    f, g = Lf.cocycle, Lg.cocycle
    m, n = f.degree, g.degree
    top = m + n - 1
    if top > min(Lf.top, Lg.top):
        raise BracketError(f"bracket degree {top} exceeds the lifting range {min(Lf.top, Lg.top)}")
    a = f.comp @ Lg.psi_f[top]
    b = g.comp @ Lf.psi_f[top]
    return a - b if sign((m - 1) * (n - 1)) > 0 else a + b


def gerstenhaber_bracket(f: Cocycle, g: Cocycle, Lf: HomotopyLifting, Lg: HomotopyLifting,
                         cochains: CochainComplex | None = None) -> BracketResult:
    if f.degree < 1 or g.degree < 1:
        raise BracketError("the bracket formula is only used in positive degrees")
    if Lf.cocycle is not f or Lg.cocycle is not g:
        raise BracketError("liftings do not belong to the given cocycles")
    P = f.P
    deg = f.degree + g.degree - 1
    c = bracket_cochain(Lf, Lg)
    is_cocycle = (c @ P.d(deg + 1)).is_zero()
    C = cochains or CochainComplex(P, P.unit, deg)
    w = C.coboundary_witness(c, deg)
    coords = None if w is not None else C.class_coordinates(c, deg)
    return BracketResult(f, g, c, deg, is_cocycle, w is not None, w, coords)


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------


@dataclass
class BracketReport:
    algebra: str
    field: dict
    maxdeg: int
    options: dict
    classes: list[Cocycle]
    dims: list[int]
    results: dict = field(default_factory=dict)  # (i, j) -> BracketResult

    @property
    def all_zero(self) -> bool:
        return all(r.zero_class for r in self.results.values())

    @property
    def all_cocycles(self) -> bool:
        return all(r.is_cocycle for r in self.results.values())

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "field": self.field,
            "maxdeg": self.maxdeg,
            "options": self.options,
            "dims": self.dims,
            "classes": [{"degree": c.degree, "label": c.label, "representative": matrix_json(c.comp)}
                        for c in self.classes],
            "brackets": [dict(i=i, j=j, **r.to_json()) for (i, j), r in sorted(self.results.items())],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["i", "j", "deg_i", "deg_j", "degree", "cocycle", "class"])
        for (i, j), r in sorted(self.results.items()):
            w.writerow([i, j, r.f.degree, r.g.degree, r.degree, r.is_cocycle, "zero" if r.zero_class else "nonzero"])
        return out.getvalue()


def build_setup(H: HopfAlgebra, maxdeg: int, resolution: str = "explicit", diagonal: str = "explicit",
                seed: int | None = None):
    """Resolution and diagonal valid up to ``maxdeg + 1`` for a supported Hopf algebra."""
    kind = H.kind.get("type")
    N = maxdeg + 2
    if resolution == "generic":
        if diagonal == "explicit":
            raise BracketError("the explicit diagonal needs the explicit resolution")
        R = free_resolution(H, N)
        D = generic_diagonal(R, seed=seed)
        if diagonal == "symmetrized":
            D = symmetrize_diagonal(D)
    elif kind == "taft":
        R = taft_resolution(H, N)
        D = taft_diagonal(R) if diagonal == "explicit" else generic_diagonal(R, seed=seed)
        if diagonal == "symmetrized":
            D = symmetrize_diagonal(D)
    elif kind == "group_zp":
        R = group_zp_resolution(H, N)
        D = generic_diagonal(R, seed=seed)
        if diagonal in ("symmetrized", "explicit"):
            D = symmetrize_diagonal(D)
    elif kind == "tensor":
        R, D = _tensor_setup(H, N, diagonal, seed)
    else:
        raise BracketError(f"unsupported algebra {H.name} ({kind})")
    return R, D


def _tensor_setup(H, N, diagonal, seed):
    facs = H.kind["factors"]
    if any(f.get("type") != "taft" for f in facs):
        raise BracketError("tensor products are supported for Taft factors only")
    F = H.field
    parts = []
    for fk in facs:
        Hi = taft(fk["n"], F, F.parse_raw(fk["root"]))
        Ri = taft_resolution(Hi, N)
        Di = taft_diagonal(Ri) if diagonal == "explicit" else generic_diagonal(Ri, seed=seed)
        parts.append((Hi, Ri, Di))
    Hc, R, D = parts[0]
    for Hi, Ri, Di in parts[1:]:
        Hc = tensor_hopf(Hc, Hi)
        R, D = tensor_resolution_and_diagonal(R, D, Ri, Di, Hc)
    if Hc.dim != H.dim:
        raise BracketError("factor reconstruction does not match the algebra")
    if diagonal == "symmetrized":
        D = symmetrize_diagonal(D)
    return R, D


def bracket_table(H: HopfAlgebra, maxdeg: int, resolution: str = "explicit", diagonal: str = "explicit",
                  lifting: str = "minimal", seed: int | None = None, setup=None) -> BracketReport:
    """All brackets of basis classes of positive degree landing in degree ``<= maxdeg``.

    ``lifting='generic'`` perturbs every lifting by a seeded random boundary.
    """
    R, D = setup or build_setup(H, maxdeg, resolution, diagonal, seed)
    P = R.complex
    basis = cohomology_basis(P, None, maxdeg)
    classes = basis.all_classes(1, maxdeg)
    lift_seed = None
    if lifting == "generic":
        lift_seed = 0 if seed is None else seed
    liftings = {}
    for k, c in enumerate(classes):
        liftings[k] = solve_homotopy_lifting(c, D, top=maxdeg,
                                             seed=None if lift_seed is None else lift_seed + k)
    report = BracketReport(H.name, H.field.to_json(), maxdeg,
                           {"resolution": resolution, "diagonal": diagonal, "lifting": lifting, "seed": seed},
                           classes, basis.dims)
    for i, f in enumerate(classes):
        for j, g in enumerate(classes):
            if f.degree + g.degree - 1 > maxdeg:
                continue
            report.results[(i, j)] = gerstenhaber_bracket(f, g, liftings[i], liftings[j], basis.complex)
    return report
