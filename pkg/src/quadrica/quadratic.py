"""Defect calculus and quadraticity certification.

For a map f: M → N between modules over a commutative square ring the three
defect families are

    d_f(m,m')   = f(m+m') − f(m') − f(m)
    f_(r)(m)    = f(m·r) − f(m)·r
    f_[x](m,m') = f([m,m']·x) − [f(m),f(m')]·x

and f is quadratic when the defects are central/bilinear/homogeneous in the
appropriate senses.  Every decision here is made twice, by genuinely
different routes (an eight-relation characterization versus the clause-level
definition, plus a reduced corollary route), and the routes are required to
agree — a built-in machine check of the theory.  The module also provides
the three-defects identity, composition with closed-form defect formulas,
the pointwise Hom CP-module, pullback/pushforward, promotion of a plain
quadratic map to a CP one, and factorization property checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import check_cap, get_config
from .errors import (
    CertificateInvalid,
    ConsistencyError,
    NonCommutativeRing,
    NotComposable,
    PreconditionUnmet,
    SearchSpaceTooLarge,
)
from .groups import FiniteGroup
from .modules import (
    BhpModule,
    CpModule,
    derived_module,
    ensure_module_verified,
    generated_submodule,
    gr,
    is_cp_linear,
    r_center,
    submodule_module,
    verify_cp_module,
)
from .squarering import is_commutative
from .verdict import Failure, Verdict, law_failures, run_laws

__all__ = [
    "MapTable",
    "DefectBundle",
    "QuadCertificate",
    "RELATION_TEXT",
    "defects",
    "is_bhp_quadratic",
    "is_cp_quadratic",
    "certificate_valid",
    "cp_implies_bhp",
    "three_defects_check",
    "compose_quadratic",
    "enumerate_cp_quadratic",
    "batch_cp_quadratic",
    "HomModule",
    "hom_module",
    "pullback",
    "pushforward",
    "promote_to_cp",
    "factorization_check",
]


class MapTable:
    """A total map between module carriers, as a table of element indices."""

    __slots__ = ("dom", "cod", "table")

    def __init__(self, dom: BhpModule, cod: BhpModule, table):
        if dom.sr != cod.sr:
            raise PreconditionUnmet("domain and codomain live over different square rings")
        self.dom = dom
        self.cod = cod
        self.table = np.ascontiguousarray(table, dtype=np.int64)
        if self.table.shape != (dom.nm,):
            raise PreconditionUnmet(f"map table shape {self.table.shape}, expected ({dom.nm},)")
        if self.table.size and (self.table.min() < 0 or self.table.max() >= cod.nm):
            raise PreconditionUnmet("map table entries out of range")

    def __call__(self, m):
        return self.table[m]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MapTable)
            and self.dom == other.dom
            and self.cod == other.cod
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self) -> int:
        return hash((self.dom, self.cod, self.table.tobytes()))

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"MapTable({list(map(int, self.table))})"


@dataclass(frozen=True, eq=False)
class DefectBundle:
    """All three defect families as tables: ``d[m,m']``, ``scalar[r,m]``,
    ``bracket[x,m,m']``."""

    d: np.ndarray
    scalar: np.ndarray
    bracket: np.ndarray


@dataclass(eq=False)
class QuadCertificate:
    """Outcome of a quadraticity decision.  ``verdict`` is the primary
    route (the eight relations for plain maps, the four defining clauses
    for pair maps); ``routes`` holds the independent confirmations that
    were run alongside it.  Certificates can be recomputed from scratch
    and compared — see ``certificate_valid``."""

    kind: str  # "bhp" | "cp"
    map: MapTable
    defects: DefectBundle
    verdict: Verdict
    routes: tuple[tuple[str, Verdict], ...]
    passed: bool
    graded: dict | None = None
    scalar_defects_quadratic: bool | None = None

    def failed_laws(self) -> tuple[str, ...]:
        return self.verdict.failed_laws()


RELATION_TEXT = {
    "1(a)": "[f(m+m'),f(n)]·x = [f(m),f(n)]·x + [f(m'),f(n)]·x",
    "2(b)": "[f(m·r),f(n)]·x = ([f(m),f(n)]·x)·r",
    "3(c)": "[f([m,m']·x),f(n)]·y = 0",
    "4(d)": "f(m+m'+m'') + f(m) + f(m') + f(m'') = "
            "f(m+m') + f(m'+m'') + f(m+m'') − [f(m'),f(m+m'')]",
    "5(e)": "f(m·r+n·s) = f(m+n)·rs − f(n)·rs − f(m)·rs + f(m·r) + f(n·s) − [f(m),f(n)]·H(rs)",
    "6(f)": "f([m,m']·x+n) = f([m,m']·x) + f(n)",
    "7(g)": "f(m·sr) − f(m·s)·r = (f(m·r) − f(m)·r)·s²",
    "8(h)": "f([m,n]·x·r) = (f([m,n]·x))·r",
    "BHP1": "images of d_f, f_(r), f_[x] are central in the generated image of f",
    "BHP2": "d_f and the f_[x] are bilinear (linear in each variable)",
    "BHP3": "f_(r)(m·s) = f_(r)(m)·s²",
    "BHPc1": "m ↦ [f(m),n]·x is linear for n in the image of f",
    "BHPc2": "d_f is bilinear",
    "BHPc3": "f_(r)(m·s) = f_(r)(m)·s²",
    "BHPc4": "f_(r) vanishes on the derived submodule",
    "CP1": "f(A) and the images of d_f, f_(r), f_[x] are contained in B",
    "CP2": "d_f and the f_[x] are bilinear",
    "CP3": "f_(r)(m·s) = f_(r)(m)·s²",
    "CP4": "d_f(M,A) = d_f(A,M) = 0, f_(r)(A) = 0, f_[x](M,A) = f_[x](A,M) = 0",
    "CPc1": "f(A) and the images of d_f and f_(r) are contained in B",
    "CPc2": "d_f is bilinear",
    "CPc3": "f_(r)(m·s) = f_(r)(m)·s²",
    "CPc4": "d_f(M,A) = d_f(A,M) = 0 = f_(r)(A)",
    "FAC1": "f(A) ⊆ B",
    "FAC2": "d_f induces a bilinear form on classes mod A with values in B",
    "FAC3": "f_(r) induces a divided-power (degree-2) form on classes mod A with values in B",
    "zero": "f(0) = 0",
    "three-defects": "d_{f_(r)}(m,m') = f_[H(r)](m,m') + d_f(m,m')·(r²−r)",
    "three-defects-r2": "d_{f_(2)}(m,m') = d_f(m,m') + d_f(m',m)",
}


# ---------------------------------------------------------------------------
# defects


def _require_commutative(mod: BhpModule) -> None:
    if not is_commutative(mod.sr):
        raise NonCommutativeRing("quadratic-map calculus requires a commutative square ring")


def defects(f: MapTable) -> DefectBundle:
    """Compute all three defect families of f by their definitions."""
    ensure_module_verified(f.dom)
    ensure_module_verified(f.cod)
    _require_commutative(f.dom)
    F, dom, cod = f.table, f.dom, f.cod
    csub = cod.group.sub
    d = csub(csub(F[dom.group.add], F[None, :]), F[:, None])
    scalar = csub(F[dom.scal].T, cod.scal[F, :].T)
    dbr = np.transpose(dom.bracket, (2, 0, 1))
    cbr = np.transpose(cod.bracket[np.ix_(F, F)], (2, 0, 1))
    bracket = csub(F[dbr], cbr)
    return DefectBundle(d=d, scalar=scalar, bracket=bracket)


# ---------------------------------------------------------------------------
# law builders for the different decision routes


def _relation_laws(f: MapTable):
    """The eight-relation characterization of a quadratic map."""
    dom, cod, F = f.dom, f.cod, f.table
    nm, ne, nee = dom.nm, dom.sr.re.order, dom.sr.ree.order
    madd, dscal, dbr = dom.group.add, dom.scal, dom.bracket
    nadd, nsub, nneg = cod.group.add, cod.group.sub, cod.group.neg
    nscal, nbr = cod.scal, cod.bracket
    mul, h = dom.sr.re.mul, dom.sr.h

    def grp_comm(a, b):
        return nadd[nadd[nadd[a, b], nneg[a]], nneg[b]]

    return [
        ("zero", (1,), lambda i: (F[i * 0], np.zeros_like(i))),
        (
            "1(a)",
            (nm, nm, nm, nee),
            lambda m, m2, n, x: (
                nbr[F[madd[m, m2]], F[n], x],
                nadd[nbr[F[m], F[n], x], nbr[F[m2], F[n], x]],
            ),
        ),
        (
            "2(b)",
            (nm, nm, ne, nee),
            lambda m, n, r, x: (nbr[F[dscal[m, r]], F[n], x], nscal[nbr[F[m], F[n], x], r]),
        ),
        (
            "3(c)",
            (nm, nm, nee, nm, nee),
            lambda m, m2, x, n, y: (
                nbr[F[dbr[m, m2, x]], F[n], y],
                np.zeros_like(m + m2 + n),
            ),
        ),
        (
            "4(d)",
            (nm, nm, nm),
            lambda m, m2, m3: (
                nadd[nadd[nadd[F[madd[madd[m, m2], m3]], F[m]], F[m2]], F[m3]],
                nsub(
                    nadd[nadd[F[madd[m, m2]], F[madd[m2, m3]]], F[madd[m, m3]]],
                    grp_comm(F[m2], F[madd[m, m3]]),
                ),
            ),
        ),
        (
            "5(e)",
            (nm, nm, ne, ne),
            lambda m, n, r, s: (
                F[madd[dscal[m, r], dscal[n, s]]],
                nsub(
                    nadd[
                        nadd[
                            nsub(
                                nsub(nscal[F[madd[m, n]], mul[r, s]], nscal[F[n], mul[r, s]]),
                                nscal[F[m], mul[r, s]],
                            ),
                            F[dscal[m, r]],
                        ],
                        F[dscal[n, s]],
                    ],
                    nbr[F[m], F[n], h[mul[r, s]]],
                ),
            ),
        ),
        (
            "6(f)",
            (nm, nm, nee, nm),
            lambda m, m2, x, n: (F[madd[dbr[m, m2, x], n]], nadd[F[dbr[m, m2, x]], F[n]]),
        ),
        (
            "7(g)",
            (nm, ne, ne),
            lambda m, r, s: (
                nsub(F[dscal[m, mul[s, r]]], nscal[F[dscal[m, s]], r]),
                nscal[nsub(F[dscal[m, r]], nscal[F[m], r]), mul[s, s]],
            ),
        ),
        (
            "8(h)",
            (nm, nm, nee, ne),
            lambda m, n, x, r: (F[dscal[dbr[m, n, x], r]], nscal[F[dbr[m, n, x]], r]),
        ),
    ]


def _bilinear_laws(label: str, phi_dims: tuple, phi, f: MapTable):
    """phi(extra_dims..., m, m') must be linear in each of m, m'.  ``phi``
    indexes as phi[(*extra, m, m')]; extra dimensions come first."""
    dom, cod = f.dom, f.cod
    nm, ne, nee = dom.nm, dom.sr.re.order, dom.sr.ree.order
    madd, dscal, dbr = dom.group.add, dom.scal, dom.bracket
    nadd, nscal, nbr = cod.group.add, cod.scal, cod.bracket
    k = phi_dims  # leading extra dims: () for d, (nee,) for the bracket defects
    specs = [
        ((nm, nm, nm), lambda *a: _first_add(a, phi, madd, nadd)),
        ((nm, nm, nm), lambda *a: _second_add(a, phi, madd, nadd)),
        ((nm, ne, nm), lambda *a: _first_scal(a, phi, dscal, nscal)),
        ((nm, ne, nm), lambda *a: _second_scal(a, phi, dscal, nscal)),
        ((nm, nm, nee, nm), lambda *a: _first_br(a, phi, dbr, nbr)),
        ((nm, nm, nee, nm), lambda *a: _second_br(a, phi, dbr, nbr)),
    ]
    return [(label, k + dims, fn) for dims, fn in specs]


def _first_add(args, phi, madd, nadd):
    *extra, m, m2, n = args
    return phi[(*extra, madd[m, m2], n)], nadd[phi[(*extra, m, n)], phi[(*extra, m2, n)]]


def _second_add(args, phi, madd, nadd):
    *extra, m, n, n2 = args
    return phi[(*extra, m, madd[n, n2])], nadd[phi[(*extra, m, n)], phi[(*extra, m, n2)]]


def _first_scal(args, phi, dscal, nscal):
    *extra, m, r, n = args
    return phi[(*extra, dscal[m, r], n)], nscal[phi[(*extra, m, n)], r]


def _second_scal(args, phi, dscal, nscal):
    *extra, m, r, n = args
    return phi[(*extra, n, dscal[m, r])], nscal[phi[(*extra, n, m)], r]


def _first_br(args, phi, dbr, nbr):
    *extra, m, m2, x, n = args
    return (
        phi[(*extra, dbr[m, m2, x], n)],
        nbr[phi[(*extra, m, n)], phi[(*extra, m2, n)], x],
    )


def _second_br(args, phi, dbr, nbr):
    *extra, m, m2, x, n = args
    return (
        phi[(*extra, n, dbr[m, m2, x])],
        nbr[phi[(*extra, n, m)], phi[(*extra, n, m2)], x],
    )


def _homogeneity_laws(label: str, f: MapTable, bundle: DefectBundle):
    dom, cod = f.dom, f.cod
    nm, ne = dom.nm, dom.sr.re.order
    mul = dom.sr.re.mul
    scal_def = bundle.scalar
    return [
        (
            label,
            (ne, nm, ne),
            lambda r, m, s: (scal_def[r, dom.scal[m, s]], cod.scal[scal_def[r, m], mul[s, s]]),
        )
    ]


def _centrality_laws(label: str, f: MapTable, bundle: DefectBundle):
    """Defect values must be central inside the generated image of f."""
    cod = f.cod
    image = generated_submodule(cod, {int(v) for v in f.table})
    iarr = np.array(image, dtype=np.int64)
    in_image = np.zeros(cod.nm, dtype=np.int64)
    in_image[iarr] = 1
    # central[v] == 1 iff v lies in the image submodule and brackets with it vanish
    central = in_image.copy()
    sub_br = cod.bracket[np.ix_(np.arange(cod.nm), iarr, np.arange(cod.sr.ree.order))]
    central &= (sub_br == 0).all(axis=(1, 2)).astype(np.int64)
    nm, ne, nee = f.dom.nm, f.dom.sr.re.order, f.dom.sr.ree.order
    d, scalar, bracket = bundle.d, bundle.scalar, bundle.bracket
    return [
        (label, (nm, nm), lambda m, n: (central[d[m, n]], np.ones_like(m + n))),
        (label, (ne, nm), lambda r, m: (central[scalar[r, m]], np.ones_like(r + m))),
        (label, (nee, nm, nm), lambda x, m, n: (central[bracket[x, m, n]], np.ones_like(x + m))),
    ]


def _def_route_laws(f: MapTable, bundle: DefectBundle):
    """Clause-by-clause transcription of the definition of a quadratic map:
    central defect images, bilinear d_f and f_[x], homogeneous f_(r)."""
    laws = _centrality_laws("BHP1", f, bundle)
    laws += _bilinear_laws("BHP2", (), bundle.d, f)
    nee = f.dom.sr.ree.order
    laws += _bilinear_laws("BHP2", (nee,), bundle.bracket, f)
    laws += _homogeneity_laws("BHP3", f, bundle)
    return laws


def _cor_route_laws(f: MapTable, bundle: DefectBundle):
    """Reduced characterization: linearity of m ↦ [f(m),n]·x for n in im f,
    bilinearity of d_f, homogeneity, and f_(r) killing the derived part."""
    dom, cod, F = f.dom, f.cod, f.table
    nm, ne, nee = dom.nm, dom.sr.re.order, dom.sr.ree.order
    madd, dscal, dbr = dom.group.add, dom.scal, dom.bracket
    nadd, nscal, nbr = cod.group.add, cod.scal, cod.bracket
    laws = [
        (
            "BHPc1",
            (nm, nm, nm, nee),
            lambda m, m2, n, x: (
                nbr[F[madd[m, m2]], F[n], x],
                nadd[nbr[F[m], F[n], x], nbr[F[m2], F[n], x]],
            ),
        ),
        (
            "BHPc1",
            (nm, ne, nm, nee),
            lambda m, r, n, x: (nbr[F[dscal[m, r]], F[n], x], nscal[nbr[F[m], F[n], x], r]),
        ),
        (
            "BHPc1",
            (nm, nm, nee, nm, nee),
            lambda m, m2, y, n, x: (
                nbr[F[dbr[m, m2, y]], F[n], x],
                nbr[nbr[F[m], F[n], x], nbr[F[m2], F[n], x], y],
            ),
        ),
    ]
    laws += _bilinear_laws("BHPc2", (), bundle.d, f)
    laws += _homogeneity_laws("BHPc3", f, bundle)
    der = np.array(derived_module(dom), dtype=np.int64)
    scalar = bundle.scalar
    laws.append(
        (
            "BHPc4",
            (ne, len(der)),
            lambda r, i: (scalar[r, der[i]], np.zeros_like(r + i)),
        )
    )
    return laws


def _cp_membership_laws(f: MapTable, bundle: DefectBundle, with_brackets: bool, label: str):
    dom, cod = f.dom, f.cod
    assert isinstance(dom, CpModule) and isinstance(cod, CpModule)
    nm, ne, nee = dom.nm, dom.sr.re.order, dom.sr.ree.order
    aarr = np.array(dom.aset, dtype=np.int64)
    bmask = cod.amask
    F = f.table
    d, scalar, bracket = bundle.d, bundle.scalar, bundle.bracket
    laws = [
        (label, (len(aarr),), lambda i: (bmask[F[aarr[i]]], np.ones_like(i))),
        (label, (nm, nm), lambda m, n: (bmask[d[m, n]], np.ones_like(m + n))),
        (label, (ne, nm), lambda r, m: (bmask[scalar[r, m]], np.ones_like(r + m))),
    ]
    if with_brackets:
        laws.append(
            (label, (nee, nm, nm), lambda x, m, n: (bmask[bracket[x, m, n]], np.ones_like(x + m)))
        )
    return laws


def _cp_vanishing_laws(f: MapTable, bundle: DefectBundle, with_brackets: bool, label: str):
    dom = f.dom
    nm, ne, nee = dom.nm, dom.sr.re.order, dom.sr.ree.order
    aarr = np.array(dom.aset, dtype=np.int64)
    la = len(aarr)
    d, scalar, bracket = bundle.d, bundle.scalar, bundle.bracket
    laws = [
        (label, (nm, la), lambda m, i: (d[m, aarr[i]], np.zeros_like(m + i))),
        (label, (la, nm), lambda i, m: (d[aarr[i], m], np.zeros_like(m + i))),
        (label, (ne, la), lambda r, i: (scalar[r, aarr[i]], np.zeros_like(r + i))),
    ]
    if with_brackets:
        laws += [
            (label, (nee, nm, la), lambda x, m, i: (bracket[x, m, aarr[i]], np.zeros_like(x + m + i))),
            (label, (nee, la, nm), lambda x, i, m: (bracket[x, aarr[i], m], np.zeros_like(x + m + i))),
        ]
    return laws


def _cp_def_route_laws(f: MapTable, bundle: DefectBundle):
    """The four defining clauses of a quadratic pair map."""
    laws = [("zero", (1,), lambda i: (f.table[i * 0], np.zeros_like(i)))]
    laws += _cp_membership_laws(f, bundle, with_brackets=True, label="CP1")
    laws += _bilinear_laws("CP2", (), bundle.d, f)
    laws += _bilinear_laws("CP2", (f.dom.sr.ree.order,), bundle.bracket, f)
    laws += _homogeneity_laws("CP3", f, bundle)
    laws += _cp_vanishing_laws(f, bundle, with_brackets=True, label="CP4")
    return laws


def _cp_cor_route_laws(f: MapTable, bundle: DefectBundle):
    """Reduced pair characterization: no bracket-defect conditions at all."""
    laws = _cp_membership_laws(f, bundle, with_brackets=False, label="CPc1")
    laws += _bilinear_laws("CPc2", (), bundle.d, f)
    laws += _homogeneity_laws("CPc3", f, bundle)
    laws += _cp_vanishing_laws(f, bundle, with_brackets=False, label="CPc4")
    return laws


def _factorization_laws(f: MapTable, bundle: DefectBundle):
    """Pointwise form of the tensor/divided-power factorization: d_f and
    f_(r) only see classes mod A, take values in B, and are bilinear resp.
    degree-2 with bilinear polarization."""
    dom, cod = f.dom, f.cod
    nm, ne = dom.nm, dom.sr.re.order
    aarr = np.array(dom.aset, dtype=np.int64)
    la = len(aarr)
    bmask = cod.amask
    madd, dscal = dom.group.add, dom.scal
    nadd, nsub, nscal = cod.group.add, cod.group.sub, cod.scal
    d, scalar = bundle.d, bundle.scalar
    F = f.table
    laws = [
        ("FAC1", (la,), lambda i: (bmask[F[aarr[i]]], np.ones_like(i))),
        ("FAC2", (nm, nm), lambda m, n: (bmask[d[m, n]], np.ones_like(m + n))),
        ("FAC2", (nm, la, nm), lambda m, i, n: (d[madd[m, aarr[i]], n], d[m, n])),
        ("FAC2", (nm, la, nm), lambda m, i, n: (d[n, madd[m, aarr[i]]], d[n, m])),
        ("FAC2", (nm, nm, nm), lambda m, m2, n: (d[madd[m, m2], n], nadd[d[m, n], d[m2, n]])),
        ("FAC2", (nm, nm, nm), lambda m, n, n2: (d[m, madd[n, n2]], nadd[d[m, n], d[m, n2]])),
        ("FAC2", (nm, ne, nm), lambda m, r, n: (d[dscal[m, r], n], nscal[d[m, n], r])),
        ("FAC2", (nm, ne, nm), lambda m, r, n: (d[n, dscal[m, r]], nscal[d[n, m], r])),
        ("FAC3", (ne, nm), lambda r, m: (bmask[scalar[r, m]], np.ones_like(r + m))),
        ("FAC3", (ne, nm, la), lambda r, m, i: (scalar[r, madd[m, aarr[i]]], scalar[r, m])),
        (
            "FAC3",
            (ne, nm, ne),
            lambda r, m, s: (scalar[r, dscal[m, s]], nscal[scalar[r, m], dom.sr.re.mul[s, s]]),
        ),
    ]

    def pol(r, m, n):
        return nsub(nsub(scalar[r, madd[m, n]], scalar[r, n]), scalar[r, m])

    laws += [
        (
            "FAC3",
            (ne, nm, nm, nm),
            lambda r, m, m2, n: (pol(r, madd[m, m2], n), nadd[pol(r, m, n), pol(r, m2, n)]),
        ),
        (
            "FAC3",
            (ne, nm, ne, nm),
            lambda r, m, s, n: (pol(r, dscal[m, s], n), nscal[pol(r, m, n), s]),
        ),
        (
            "FAC3",
            (ne, nm, ne, nm),
            lambda r, m, s, n: (pol(r, n, dscal[m, s]), nscal[pol(r, n, m), s]),
        ),
    ]
    return laws


# ---------------------------------------------------------------------------
# deciders


def _run_routes(primary_laws, secondary, *, jobs: int):
    """Primary route exhaustively; secondaries exhaustively in the debug
    profile, stride-sampled in release.  A sampled route can only convict,
    never acquit: disagreement with an exhaustive primary is an internal
    error either way, a sampled pass against a failing primary is not."""
    cfg = get_config()
    primary = run_laws(primary_laws, all_witnesses=cfg.exhaustive_witnesses, jobs=jobs)
    stride = 1 if cfg.profile == "debug" else max(1, cfg.sample_rate)
    outcomes = []
    for name, laws in secondary:
        verdict = run_laws(laws, stride=stride, jobs=jobs)
        outcomes.append((name, verdict))
        if primary.passed and not verdict.passed:
            first = verdict.failures[0]
            raise ConsistencyError(
                f"routes disagree: primary passes but {name} fails "
                f"{first.law} at {first.witness}"
            )
        if not primary.passed and verdict.passed and stride == 1:
            raise ConsistencyError(
                f"routes disagree: primary fails {primary.failures[0].law} "
                f"but {name} passes"
            )
    return primary, tuple(outcomes)


def is_bhp_quadratic(f: MapTable, *, _recertify: bool = True) -> QuadCertificate:
    """Decide quadraticity of a plain map.  Primary route: the eight
    relations; confirmed against the clause-level definition and against
    the reduced four-condition characterization.  For a passing map the
    scalar defects are re-certified quadratic as well."""
    ensure_module_verified(f.dom)
    ensure_module_verified(f.cod)
    _require_commutative(f.dom)
    bundle = defects(f)
    cfg = get_config()
    primary, outcomes = _run_routes(
        _relation_laws(f),
        [("definition", _def_route_laws(f, bundle)), ("reduced", _cor_route_laws(f, bundle))],
        jobs=cfg.jobs,
    )
    cert = QuadCertificate(
        kind="bhp",
        map=f,
        defects=bundle,
        verdict=primary,
        routes=outcomes,
        passed=primary.passed,
    )
    if cert.passed and _recertify:
        cert.scalar_defects_quadratic = _scalar_defects_quadratic(f, bundle, kind="bhp")
    return cert


def is_cp_quadratic(f: MapTable, ma: CpModule | None = None, nb: CpModule | None = None,
                    *, _recertify: bool = True) -> QuadCertificate:
    """Decide quadraticity of a pair map (M,A) → (N,B).  Primary route:
    the four defining clauses; confirmed against the reduced (no bracket
    conditions) characterization and the pointwise factorization one.
    A passing certificate carries the induced degree-1 and degree-2 maps,
    verified linear over the quotient ring."""
    if (ma is None) != (nb is None):
        raise PreconditionUnmet("pass both pair modules or neither")
    if ma is not None:
        if not isinstance(ma, CpModule) or not isinstance(nb, CpModule):
            raise PreconditionUnmet("pair deciders need CP modules on both sides")
        f = MapTable(ma, nb, f.table if isinstance(f, MapTable) else f)
    if not isinstance(f.dom, CpModule) or not isinstance(f.cod, CpModule):
        raise PreconditionUnmet("pair deciders need CP modules on both sides")
    ensure_module_verified(f.dom)
    ensure_module_verified(f.cod)
    _require_commutative(f.dom)
    bundle = defects(f)
    cfg = get_config()
    primary, outcomes = _run_routes(
        _cp_def_route_laws(f, bundle),
        [
            ("reduced", _cp_cor_route_laws(f, bundle)),
            ("factorization", _factorization_laws(f, bundle)),
        ],
        jobs=cfg.jobs,
    )
    cert = QuadCertificate(
        kind="cp",
        map=f,
        defects=bundle,
        verdict=primary,
        routes=outcomes,
        passed=primary.passed,
    )
    if cert.passed:
        cert.graded = _graded_maps(f)
        if _recertify:
            cert.scalar_defects_quadratic = _scalar_defects_quadratic(f, bundle, kind="cp")
    return cert


def _scalar_defects_quadratic(f: MapTable, bundle: DefectBundle, kind: str) -> bool:
    """The scalar defects of a quadratic map are themselves quadratic;
    recomputed here for every passing certificate (depth one only)."""
    for r in range(f.dom.sr.re.order):
        fr = MapTable(f.dom, f.cod, bundle.scalar[r])
        if kind == "bhp":
            sub = is_bhp_quadratic(fr, _recertify=False)
        else:
            sub = is_cp_quadratic(fr, _recertify=False)
        if not sub.passed:
            raise ConsistencyError(
                f"scalar defect f_({r}) of a certified quadratic map fails "
                f"{sub.verdict.failures[0].law}"
            )
    return True


def _graded_maps(f: MapTable) -> dict:
    """The induced maps on M/A and on A, with their linearity verified."""
    dom, cod, F = f.dom, f.cod, f.table
    gdom, gcod = gr(dom), gr(cod)
    reps = np.array(
        [int(np.flatnonzero(gdom.proj1 == c)[0]) for c in range(gdom.deg1.order)],
        dtype=np.int64,
    )
    fbar = gcod.proj1[F[reps]]
    bad = law_failures(
        "fbar-well-defined",
        (dom.nm,),
        lambda m: (gcod.proj1[F[m]], fbar[gdom.proj1[m]]),
    )
    if bad:
        raise ConsistencyError(f"induced degree-1 map ill-defined at {bad[0].witness}")
    index_b = np.full(cod.nm, -1, dtype=np.int64)
    index_b[gcod.embed2] = np.arange(len(gcod.embed2))
    f2 = index_b[F[gdom.embed2]]
    if f2.size and f2.min() < 0:
        raise ConsistencyError("induced degree-2 map leaves B")
    k1d, k1c, kbar = gdom.deg1.order, gcod.deg1.order, gdom.operad.op1.order
    k2d = gdom.deg2.order
    linear_laws = [
        ("fbar-additive", (k1d, k1d),
         lambda a, b: (fbar[gdom.deg1.group.add[a, b]], gcod.deg1.group.add[fbar[a], fbar[b]])),
        ("fbar-equivariant", (k1d, kbar),
         lambda a, r: (fbar[gdom.deg1.scal[a, r]], gcod.deg1.scal[fbar[a], r])),
        ("f2-additive", (k2d, k2d),
         lambda a, b: (f2[gdom.deg2.group.add[a, b]], gcod.deg2.group.add[f2[a], f2[b]])),
        ("f2-equivariant", (k2d, kbar),
         lambda a, r: (f2[gdom.deg2.scal[a, r]], gcod.deg2.scal[f2[a], r])),
    ]
    verdict = run_laws(linear_laws)
    if not verdict.passed:
        first = verdict.failures[0]
        raise ConsistencyError(f"induced graded map violates {first.law} at {first.witness}")
    return {"fbar": fbar, "f2": f2}


def certificate_valid(cert: QuadCertificate) -> bool:
    """Recompute the certificate from scratch and compare the outcome."""
    try:
        if cert.kind == "bhp":
            fresh = is_bhp_quadratic(cert.map, _recertify=False)
        else:
            fresh = is_cp_quadratic(cert.map, _recertify=False)
    except (PreconditionUnmet, NonCommutativeRing):
        return False
    return fresh.passed == cert.passed and fresh.failed_laws() == cert.failed_laws()


def cp_implies_bhp(cert: QuadCertificate) -> QuadCertificate:
    """A quadratic pair map is quadratic as a plain map; verified anew."""
    if cert.kind != "cp" or not cert.passed:
        raise PreconditionUnmet("needs a passing pair certificate")
    out = is_bhp_quadratic(MapTable(cert.map.dom, cert.map.cod, cert.map.table))
    if not out.passed:
        raise ConsistencyError(
            f"pair-quadratic map fails the plain decision at {out.verdict.failures[0].law}"
        )
    return out


# ---------------------------------------------------------------------------
# three-defects identity


def three_defects_check(f: MapTable) -> Verdict:
    """d_{f_(r)}(m,m') = f_[H(r)](m,m') + d_f(m,m')·(r²−r), plus its r=2
    specialization d_{f_(2)}(m,m') = d_f(m,m') + d_f(m',m).  Requires the
    centrality and bilinearity clauses to hold first."""
    ensure_module_verified(f.dom)
    ensure_module_verified(f.cod)
    _require_commutative(f.dom)
    bundle = defects(f)
    gate = run_laws(
        _centrality_laws("BHP1", f, bundle)
        + _bilinear_laws("BHP2", (), bundle.d, f)
        + _bilinear_laws("BHP2", (f.dom.sr.ree.order,), bundle.bracket, f)
    )
    if not gate.passed:
        first = gate.failures[0]
        raise PreconditionUnmet(
            f"three-defects identity needs central/bilinear defects; "
            f"{first.law} fails at {first.witness}"
        )
    dom, cod = f.dom, f.cod
    nm, ne = dom.nm, dom.sr.re.order
    madd = dom.group.add
    nadd, nsub, nscal = cod.group.add, cod.group.sub, cod.scal
    d, scalar, bracket = bundle.d, bundle.scalar, bundle.bracket
    h, mul, rsub = dom.sr.h, dom.sr.re.mul, dom.sr.re.group.sub
    two = dom.sr.two

    def d_fr(r, m, m2):
        return nsub(nsub(scalar[r, madd[m, m2]], scalar[r, m2]), scalar[r, m])

    laws = [
        (
            "three-defects",
            (ne, nm, nm),
            lambda r, m, m2: (
                d_fr(r, m, m2),
                nadd[bracket[h[r], m, m2], nscal[d[m, m2], rsub(mul[r, r], r)]],
            ),
        ),
        (
            "three-defects-r2",
            (nm, nm),
            lambda m, m2: (d_fr(two + np.zeros_like(m), m, m2), nadd[d[m, m2], d[m2, m]]),
        ),
    ]
    return run_laws(laws)


# ---------------------------------------------------------------------------
# composition


def compose_quadratic(g: QuadCertificate, f: QuadCertificate) -> QuadCertificate:
    """Certify g∘f for pair-quadratic g and f, cross-checking the composite
    defects against their closed forms:

        d_{g∘f}(m,m')    = g(d_f(m,m')) + d_g(f(m),f(m'))
        (g∘f)_(r)(m)     = g(f_(r)(m)) + g_(r)(f(m))
        (g∘f)_[x](m,m')  = g(f_[x](m,m')) + g_[x](f(m),f(m'))
    """
    for cert in (f, g):
        if cert.kind != "cp":
            raise PreconditionUnmet("composition works on pair certificates")
        if not cert.passed:
            raise CertificateInvalid(f"input certificate fails {cert.failed_laws()}")
        if not certificate_valid(cert):
            raise CertificateInvalid("certificate does not re-verify from scratch")
    if f.map.cod != g.map.dom:
        raise NotComposable("codomain of f must be the domain of g (same pair)")
    F, G = f.map.table, g.map.table
    comp = MapTable(f.map.dom, g.map.cod, G[F])
    out = is_cp_quadratic(comp)
    if not out.passed:
        raise ConsistencyError(
            f"composite of quadratic pair maps fails {out.verdict.failures[0].law}"
        )
    ladd = g.map.cod.group.add
    df, dg, dc = f.defects, g.defects, out.defects
    checks = [
        ("composite additive defect", dc.d, ladd[G[df.d], dg.d[np.ix_(F, F)]]),
        ("composite scalar defects", dc.scalar, ladd[G[df.scalar], dg.scalar[:, F]]),
        (
            "composite bracket defects",
            dc.bracket,
            ladd[G[df.bracket], dg.bracket[:, F[:, None], F[None, :]]],
        ),
    ]
    for what, direct, closed in checks:
        if not np.array_equal(direct, closed):
            where = tuple(int(v) for v in np.argwhere(direct != closed)[0])
            raise ConsistencyError(f"{what} disagree with the closed form at {where}")
    return out


# ---------------------------------------------------------------------------
# enumeration and the Hom module


def _cp_constraint_schedule(ma: CpModule, nb: CpModule):
    """Constraints checkable as soon as their highest-indexed argument is
    assigned, used for depth-first pruning.  Everything here is a necessary
    condition (membership in B, vanishing on A) of the defining clauses."""
    nm, ne, nee = ma.nm, ma.sr.re.order, ma.sr.ree.order
    pairs: list[list[tuple[int, int, int]]] = [[] for _ in range(nm)]
    scals: list[list[tuple[int, int, int]]] = [[] for _ in range(nm)]
    bracks: list[list[tuple[int, int, int, int]]] = [[] for _ in range(nm)]
    for i in range(nm):
        for j in range(nm):
            s = int(ma.group.add[i, j])
            pairs[max(i, j, s)].append((i, j, s))
        for r in range(ne):
            j = int(ma.scal[i, r])
            scals[max(i, j)].append((i, r, j))
        for j in range(nm):
            for x in range(nee):
                b = int(ma.bracket[i, j, x])
                bracks[max(i, j, b)].append((i, j, x, b))
    return pairs, scals, bracks


def enumerate_cp_quadratic(ma: CpModule, nb: CpModule, limit: int = 1_000_000) -> list[MapTable]:
    """All quadratic pair maps (M,A) → (N,B), in lexicographic table order.
    Search is depth-first with f(0)=0 and incremental rejection on the
    membership/vanishing clauses; completions are filtered by the full
    batch decision and each survivor is certified."""
    ensure_module_verified(ma)
    ensure_module_verified(nb)
    _require_commutative(ma)
    nm, ncod = ma.nm, nb.nm
    bound = ncod ** max(nm - 1, 0)
    if bound > limit:
        raise SearchSpaceTooLarge(bound, limit)
    pairs, scals, bracks = _cp_constraint_schedule(ma, nb)
    amask, bmask = ma.amask, nb.amask
    nsub, nscal, nbr = nb.group.sub, nb.scal, nb.bracket
    F = np.zeros(nm, dtype=np.int64)
    found: list[np.ndarray] = []

    def ok_at(k: int) -> bool:
        for i, j, s in pairs[k]:
            dv = int(nsub(nsub(F[s], F[j]), F[i]))
            if not bmask[dv]:
                return False
            if (amask[i] or amask[j]) and dv != 0:
                return False
        for i, r, j in scals[k]:
            sv = int(nsub(F[j], nscal[F[i], r]))
            if not bmask[sv]:
                return False
            if amask[i] and sv != 0:
                return False
        for i, j, x, b in bracks[k]:
            bv = int(nsub(F[b], nbr[F[i], F[j], x]))
            if not bmask[bv]:
                return False
            if (amask[i] or amask[j]) and bv != 0:
                return False
        return True

    def dfs(k: int) -> None:
        if k == nm:
            found.append(F.copy())
            return
        for v in range(ncod):
            F[k] = v
            if ok_at(k):
                dfs(k + 1)
        F[k] = 0

    if nm == 1:
        if ok_at(0):
            found.append(F.copy())
    else:
        if ok_at(0):
            dfs(1)
    if not found:
        return []
    tables = np.stack(found)
    keep = batch_cp_quadratic(ma, nb, tables)
    out = []
    for table in tables[keep]:
        f = MapTable(ma, nb, table)
        cert = is_cp_quadratic(f, _recertify=False)
        if not cert.passed:
            raise ConsistencyError("batch filter accepted a non-quadratic table")
        out.append(f)
    return out


# -- vectorized-over-candidates deciders.  Used by the enumerator and by the
# equivalence censuses, which certify that the different characterizations of
# a quadratic map pick out identical sets of tables.


def _batch_prepare(dom: BhpModule, cod: BhpModule, tables) -> np.ndarray:
    ensure_module_verified(dom)
    ensure_module_verified(cod)
    _require_commutative(dom)
    T = np.ascontiguousarray(tables, dtype=np.int64)
    if T.ndim != 2 or T.shape[1] != dom.nm:
        raise PreconditionUnmet(f"tables must be (K, {dom.nm})")
    if T.size and (T.min() < 0 or T.max() >= cod.nm):
        raise PreconditionUnmet("table entries out of range")
    return T


def _batch_defects(t, dom, cod):
    """Per-candidate defect tables d[q,m,n], sd[q,m,r], bd[q,m,n,x]."""
    nsub, nscal, nbr = cod.group.sub, cod.scal, cod.bracket
    xs = np.arange(dom.sr.ree.order)
    d = nsub(nsub(t[:, dom.group.add], t[:, None, :]), t[:, :, None])
    sd = nsub(t[:, dom.scal], nscal[t])
    bd = nsub(
        t[:, dom.bracket],
        nbr[t[:, :, None, None], t[:, None, :, None], xs[None, None, None, :]],
    )
    return d, sd, bd


def _block_d_bilinear(d, dom, cod):
    """d linear in each slot: additivity, scalar and bracket equivariance."""
    madd, dscal, dbr = dom.group.add, dom.scal, dom.bracket
    nadd, nscal, nbr = cod.group.add, cod.scal, cod.bracket
    rs = np.arange(dom.sr.re.order)
    xs = np.arange(dom.sr.ree.order)
    good = (d[:, madd, :] == nadd[d[:, :, None, :], d[:, None, :, :]]).all(axis=(1, 2, 3))
    good &= (d[:, :, madd] == nadd[d[:, :, :, None], d[:, :, None, :]]).all(axis=(1, 2, 3))
    good &= (d[:, dscal, :] == nscal[d[:, :, None, :], rs[None, None, :, None]]).all(axis=(1, 2, 3))
    good &= (d[:, :, dscal] == nscal[d[:, :, :, None], rs[None, None, None, :]]).all(axis=(1, 2, 3))
    good &= (
        d[:, dbr, :]
        == nbr[d[:, :, None, None, :], d[:, None, :, None, :], xs[None, None, None, :, None]]
    ).all(axis=(1, 2, 3, 4))
    good &= (
        d[:, :, dbr]
        == nbr[d[:, :, :, None, None], d[:, :, None, :, None], xs[None, None, None, None, :]]
    ).all(axis=(1, 2, 3, 4))
    return good


def _block_bd_bilinear(bd, dom, cod):
    """Every f_[x] linear in each slot (the parameter x rides on the last axis)."""
    madd, dscal, dbr = dom.group.add, dom.scal, dom.bracket
    nadd, nscal, nbr = cod.group.add, cod.scal, cod.bracket
    rs = np.arange(dom.sr.re.order)
    xs = np.arange(dom.sr.ree.order)
    good = (bd[:, madd, :, :] == nadd[bd[:, :, None, :, :], bd[:, None, :, :, :]]).all(
        axis=(1, 2, 3, 4)
    )
    good &= (bd[:, :, madd, :] == nadd[bd[:, :, :, None, :], bd[:, :, None, :, :]]).all(
        axis=(1, 2, 3, 4)
    )
    good &= (bd[:, dscal, :, :] == nscal[bd[:, :, None, :, :], rs[None, None, :, None, None]]).all(
        axis=(1, 2, 3, 4)
    )
    good &= (bd[:, :, dscal, :] == nscal[bd[:, :, :, None, :], rs[None, None, None, :, None]]).all(
        axis=(1, 2, 3, 4)
    )
    good &= (
        bd[:, dbr, :, :]
        == nbr[
            bd[:, :, None, None, :, :],
            bd[:, None, :, None, :, :],
            xs[None, None, None, :, None, None],
        ]
    ).all(axis=(1, 2, 3, 4, 5))
    good &= (
        bd[:, :, dbr, :]
        == nbr[
            bd[:, :, :, None, None, :],
            bd[:, :, None, :, None, :],
            xs[None, None, None, None, :, None],
        ]
    ).all(axis=(1, 2, 3, 4, 5))
    return good


def _block_sd_homogeneous(sd, dom, cod):
    """f_(r)(m·s) = f_(r)(m)·s² for all r, m, s."""
    rs = np.arange(dom.sr.re.order)
    sq = dom.sr.re.mul[rs, rs]
    return (sd[:, dom.scal, :] == cod.scal[sd[:, :, None, :], sq[None, None, :, None]]).all(
        axis=(1, 2, 3)
    )


def _block_centrality(t, d, sd, bd, dom, cod):
    """Defect values central in the generated image, one candidate at a time
    (the generated submodule differs per candidate)."""
    from .modules import _submodule_closure

    nee = cod.sr.ree.order
    k = t.shape[0]
    good = np.ones(k, dtype=bool)
    for q in range(k):
        image = np.array(sorted(_submodule_closure(cod, {int(v) for v in t[q]})), dtype=np.int64)
        central = np.zeros(cod.nm, dtype=bool)
        central[image] = True
        central &= (cod.bracket[:, image, :] == 0).all(axis=(1, 2))
        good[q] = (
            central[d[q]].all() and central[sd[q]].all() and central[bd[q]].all()
        )
    return good


def _chunked(fn, T: np.ndarray, per_candidate: int) -> np.ndarray:
    K = T.shape[0]
    ok = np.ones(K, dtype=bool)
    if K == 0:
        return ok
    chunk = max(1, (1 << 20) // max(per_candidate, 1))
    for start in range(0, K, chunk):
        sl = slice(start, min(start + chunk, K))
        ok[sl] = fn(T[sl])
    return ok


def batch_cp_quadratic(ma: CpModule, nb: CpModule, tables, route: str = "definition") -> np.ndarray:
    """Vectorized pair-quadraticity filter; one boolean per candidate row.

    route "definition": the four defining clauses.
    route "reduced": the bracket-defect-free characterization.
    route "factorization": the pointwise tensor/divided-power properties.
    All three select the same tables; the equivalence is itself under test.
    """
    if not isinstance(ma, CpModule) or not isinstance(nb, CpModule):
        raise PreconditionUnmet("pair deciders need CP modules on both sides")
    if route not in ("definition", "reduced", "factorization"):
        raise PreconditionUnmet(f"unknown route {route!r}")
    T = _batch_prepare(ma, nb, tables)
    nm, ne, nee = ma.nm, ma.sr.re.order, ma.sr.ree.order
    aarr = np.array(ma.aset, dtype=np.int64)
    bmask = nb.amask.astype(bool)
    madd, dscal = ma.group.add, ma.scal
    nadd, nsub, nscal = nb.group.add, nb.group.sub, nb.scal
    rs = np.arange(ne)

    def eval_chunk(t: np.ndarray) -> np.ndarray:
        d, sd, bd = _batch_defects(t, ma, nb)
        good = bmask[t[:, aarr]].all(axis=1)
        good &= bmask[d].all(axis=(1, 2))
        good &= bmask[sd].all(axis=(1, 2))
        if route == "definition":
            good &= bmask[bd].all(axis=(1, 2, 3))
            good &= (d[:, aarr, :] == 0).all(axis=(1, 2))
            good &= (d[:, :, aarr] == 0).all(axis=(1, 2))
            good &= (sd[:, aarr, :] == 0).all(axis=(1, 2))
            good &= (bd[:, aarr, :, :] == 0).all(axis=(1, 2, 3))
            good &= (bd[:, :, aarr, :] == 0).all(axis=(1, 2, 3))
            good &= _block_d_bilinear(d, ma, nb)
            good &= _block_bd_bilinear(bd, ma, nb)
            good &= _block_sd_homogeneous(sd, ma, nb)
        elif route == "reduced":
            good &= (d[:, aarr, :] == 0).all(axis=(1, 2))
            good &= (d[:, :, aarr] == 0).all(axis=(1, 2))
            good &= (sd[:, aarr, :] == 0).all(axis=(1, 2))
            good &= _block_d_bilinear(d, ma, nb)
            good &= _block_sd_homogeneous(sd, ma, nb)
        else:  # factorization
            good &= (d[:, madd[:, aarr], :] == d[:, :, None, :]).all(axis=(1, 2, 3))
            good &= (d[:, :, madd[:, aarr]] == d[:, :, :, None]).all(axis=(1, 2, 3))
            good &= (sd[:, madd[:, aarr], :] == sd[:, :, None, :]).all(axis=(1, 2, 3))
            good &= (d[:, madd, :] == nadd[d[:, :, None, :], d[:, None, :, :]]).all(axis=(1, 2, 3))
            good &= (d[:, :, madd] == nadd[d[:, :, :, None], d[:, :, None, :]]).all(axis=(1, 2, 3))
            good &= (d[:, dscal, :] == nscal[d[:, :, None, :], rs[None, None, :, None]]).all(
                axis=(1, 2, 3)
            )
            good &= (d[:, :, dscal] == nscal[d[:, :, :, None], rs[None, None, None, :]]).all(
                axis=(1, 2, 3)
            )
            good &= _block_sd_homogeneous(sd, ma, nb)
            # polarization of each sd[r]: pol[q,m,n,r] biadditive and equivariant
            pol = nsub(nsub(sd[:, madd, :], sd[:, None, :, :]), sd[:, :, None, :])
            good &= (pol[:, madd, :, :] == nadd[pol[:, :, None, :, :], pol[:, None, :, :, :]]).all(
                axis=(1, 2, 3, 4)
            )
            good &= (pol[:, dscal, :, :] == nscal[pol[:, :, None, :, :],
                                                  rs[None, None, :, None, None]]).all(
                axis=(1, 2, 3, 4)
            )
            good &= (pol[:, :, dscal, :] == nscal[pol[:, :, :, None, :],
                                                  rs[None, None, None, :, None]]).all(
                axis=(1, 2, 3, 4)
            )
        return good

    per = nm * nm * max(nm * nee * nee, nm * nm, ne * ne) + 1
    return _chunked(eval_chunk, T, per)


def batch_bhp_quadratic(
    dom: BhpModule, cod: BhpModule, tables, route: str = "relations"
) -> np.ndarray:
    """Vectorized plain-quadraticity filter; one boolean per candidate row.

    route "relations": the eight-relation characterization.
    route "definition": central defect images + bilinearity + homogeneity.
    route "reduced": linearity of m ↦ [f(m),n]·x for n in the image, d_f
    bilinear, homogeneity, scalar defects killing the derived submodule.
    """
    if route not in ("relations", "definition", "reduced"):
        raise PreconditionUnmet(f"unknown route {route!r}")
    T = _batch_prepare(dom, cod, tables)
    nm, ne, nee = dom.nm, dom.sr.re.order, dom.sr.ree.order
    madd, dscal, dbr = dom.group.add, dom.scal, dom.bracket
    nadd, nsub, nneg, nscal, nbr = (
        cod.group.add,
        cod.group.sub,
        cod.group.neg,
        cod.scal,
        cod.bracket,
    )
    mul, h = dom.sr.re.mul, dom.sr.h
    rs = np.arange(ne)
    xs = np.arange(nee)
    sq = mul[rs, rs]
    madd3 = madd[madd, :]
    der = np.array(derived_module(dom), dtype=np.int64)

    def eval_relations(t: np.ndarray) -> np.ndarray:
        # B[q,m,n,x] = [f(m), f(n)]·x
        B = nbr[t[:, :, None, None], t[:, None, :, None], xs[None, None, None, :]]
        good = (B[:, madd, :, :] == nadd[B[:, :, None, :, :], B[:, None, :, :, :]]).all(
            axis=(1, 2, 3, 4)
        )
        good &= (B[:, dscal, :, :] == nscal[B[:, :, None, :, :], rs[None, None, :, None, None]]).all(
            axis=(1, 2, 3, 4)
        )
        good &= (B[:, dbr, :, :] == 0).all(axis=(1, 2, 3, 4, 5))
        # relation at position 4: inclusion–exclusion of f over three summands
        lhs4 = nadd[
            nadd[nadd[t[:, madd3], t[:, :, None, None]], t[:, None, :, None]], t[:, None, None, :]
        ]
        s1 = t[:, madd]
        sums3 = nadd[nadd[s1[:, :, :, None], s1[:, None, :, :]], s1[:, :, None, :]]
        fm2 = t[:, None, :, None]
        fm13 = s1[:, :, None, :]
        comm = nadd[nadd[nadd[fm2, fm13], nneg[fm2]], nneg[fm13]]
        good &= (lhs4 == nsub(sums3, comm)).all(axis=(1, 2, 3))
        # relation at position 5: mixed-scalar sum formula
        dd = madd[dscal[:, None, :, None], dscal[None, :, None, :]]
        mulrs = mul[rs[:, None], rs[None, :]]
        a1 = nscal[s1[:, :, :, None, None], mulrs[None, None, None, :, :]]
        a2 = nscal[t[:, None, :, None, None], mulrs[None, None, None, :, :]]
        a3 = nscal[t[:, :, None, None, None], mulrs[None, None, None, :, :]]
        a4 = t[:, dscal][:, :, None, :, None]
        a5 = t[:, dscal][:, None, :, None, :]
        a6 = B[:, :, :, h[mulrs]]
        good &= (t[:, dd] == nsub(nadd[nadd[nsub(nsub(a1, a2), a3), a4], a5], a6)).all(
            axis=(1, 2, 3, 4)
        )
        # relation at position 6: f splits off bracket values additively
        shift = madd[dbr[:, :, :, None], np.arange(nm)[None, None, None, :]]
        good &= (t[:, shift] == nadd[t[:, dbr][:, :, :, :, None], t[:, None, None, None, :]]).all(
            axis=(1, 2, 3, 4)
        )
        # relation at position 7: scalar-defect homogeneity in disguise
        sd = nsub(t[:, dscal], nscal[t])
        lhs7 = nsub(
            t[:, dscal[:, mul.T]],
            nscal[t[:, dscal][:, :, None, :], rs[None, None, :, None]],
        )
        good &= (lhs7 == nscal[sd[:, :, :, None], sq[None, None, None, :]]).all(axis=(1, 2, 3))
        # relation at position 8: f equivariant on bracket values
        hd = dscal[dbr]
        good &= (t[:, hd] == nscal[t[:, dbr][:, :, :, :, None], rs[None, None, None, None, :]]).all(
            axis=(1, 2, 3, 4)
        )
        return good

    def eval_definition(t: np.ndarray) -> np.ndarray:
        d, sd, bd = _batch_defects(t, dom, cod)
        good = _block_centrality(t, d, sd, bd, dom, cod)
        good &= _block_d_bilinear(d, dom, cod)
        good &= _block_bd_bilinear(bd, dom, cod)
        good &= _block_sd_homogeneous(sd, dom, cod)
        return good

    def eval_reduced(t: np.ndarray) -> np.ndarray:
        d, sd, _bd = _batch_defects(t, dom, cod)
        B = nbr[t[:, :, None, None], t[:, None, :, None], xs[None, None, None, :]]
        good = (B[:, madd, :, :] == nadd[B[:, :, None, :, :], B[:, None, :, :, :]]).all(
            axis=(1, 2, 3, 4)
        )
        good &= (B[:, dscal, :, :] == nscal[B[:, :, None, :, :], rs[None, None, :, None, None]]).all(
            axis=(1, 2, 3, 4)
        )
        good &= (
            B[:, dbr, :, :]
            == nbr[
                B[:, :, None, None, :, :],
                B[:, None, :, None, :, :],
                xs[None, None, None, :, None, None],
            ]
        ).all(axis=(1, 2, 3, 4, 5))
        good &= _block_d_bilinear(d, dom, cod)
        good &= _block_sd_homogeneous(sd, dom, cod)
        good &= (sd[:, der, :] == 0).all(axis=(1, 2))
        return good

    fn = {"relations": eval_relations, "definition": eval_definition, "reduced": eval_reduced}[
        route
    ]
    per = nm * nm * max(nee * nm * nee, nee * ne, nm) + 1
    return _chunked(fn, T, per)


class HomModule(CpModule):
    """The CP-module of quadratic pair maps (M,A) → (N,B) with pointwise
    operations; ``maps[i]`` is the table of element i."""

    __slots__ = ("dom_pair", "cod_pair", "maps")


def hom_module(ma: CpModule, nb: CpModule, limit: int = 1_000_000) -> HomModule:
    """Carrier: every quadratic pair map (M,A) → (N,B), under pointwise
    (f+g)(m) = f(m)+g(m), (f·r)(m) = f(m)·r, ([f,g]·x)(m) = [f(m),g(m)]·x.
    Distinguished subgroup: maps with image in B killing A.  The result
    must itself pass the full pair-module verification — the capstone
    closure theorem, machine-checked on every call."""
    maps = enumerate_cp_quadratic(ma, nb, limit=limit)
    tables = np.stack([f.table for f in maps]) if maps else np.zeros((0, ma.nm), dtype=np.int64)
    order = [tuple(map(int, t)) for t in tables]
    rank = {t: i for i, t in enumerate(order)}
    k = len(order)
    check_cap("hom-module carrier", k, get_config().cap_group)

    def locate(arr: np.ndarray, what: str) -> int:
        key = tuple(map(int, arr))
        if key not in rank:
            raise ConsistencyError(f"pointwise {what} left the carrier of quadratic maps")
        return rank[key]

    nadd, nneg = nb.group.add, nb.group.neg
    add = np.zeros((k, k), dtype=np.int64)
    neg = np.zeros(k, dtype=np.int64)
    scal = np.zeros((k, ma.sr.re.order), dtype=np.int64)
    bracket = np.zeros((k, k, ma.sr.ree.order), dtype=np.int64)
    for i in range(k):
        neg[i] = locate(nneg[tables[i]], "negation")
        for j in range(k):
            add[i, j] = locate(nadd[tables[i], tables[j]], "sum")
            for x in range(ma.sr.ree.order):
                bracket[i, j, x] = locate(nb.bracket[tables[i], tables[j], x], "bracket")
        for r in range(ma.sr.re.order):
            scal[i, r] = locate(nb.scal[tables[i], r], "scalar multiple")
    group = FiniteGroup(add, neg)
    bmask = nb.amask
    aarr = np.array(ma.aset, dtype=np.int64)
    aset = [
        i
        for i in range(k)
        if bmask[tables[i]].all() and (len(aarr) == 0 or (tables[i][aarr] == 0).all())
    ]
    hom = HomModule(ma.sr, group, scal, bracket, aset)
    hom.dom_pair = ma
    hom.cod_pair = nb
    hom.maps = tuple(MapTable(ma, nb, t) for t in tables)
    verdict = verify_cp_module(hom)
    if not verdict.passed:
        first = verdict.failures[0]
        raise ConsistencyError(
            f"hom module fails {first.law} at {first.witness} — closure theorem violated"
        )
    return hom


def pullback(f: QuadCertificate, lc: CpModule, limit: int = 1_000_000) -> MapTable:
    """Precomposition h ↦ h∘f between hom modules, certified linear."""
    if f.kind != "cp" or not f.passed:
        raise PreconditionUnmet("pullback needs a passing pair certificate")
    if not certificate_valid(f):
        raise CertificateInvalid("certificate does not re-verify from scratch")
    hom_src = hom_module(f.map.cod, lc, limit=limit)
    hom_dst = hom_module(f.map.dom, lc, limit=limit)
    rank = {tuple(map(int, g.table)): i for i, g in enumerate(hom_dst.maps)}
    table = np.zeros(hom_src.nm, dtype=np.int64)
    for i, h in enumerate(hom_src.maps):
        key = tuple(map(int, h.table[f.map.table]))
        if key not in rank:
            raise ConsistencyError("precomposition left the target hom carrier")
        table[i] = rank[key]
    out = MapTable(hom_src, hom_dst, table)
    if not is_cp_linear(table, hom_src, hom_dst):
        raise ConsistencyError("precomposition by a quadratic pair map is not linear")
    return out


def pushforward(g: QuadCertificate, ma: CpModule, limit: int = 1_000_000) -> QuadCertificate:
    """Postcomposition f ↦ g∘f between hom modules, certified quadratic,
    with the scalar-defect identity (g_*)_(r)(f) = g_(r)∘f cross-checked."""
    if g.kind != "cp" or not g.passed:
        raise PreconditionUnmet("pushforward needs a passing pair certificate")
    if not certificate_valid(g):
        raise CertificateInvalid("certificate does not re-verify from scratch")
    hom_src = hom_module(ma, g.map.dom, limit=limit)
    hom_dst = hom_module(ma, g.map.cod, limit=limit)
    rank = {tuple(map(int, h.table)): i for i, h in enumerate(hom_dst.maps)}
    table = np.zeros(hom_src.nm, dtype=np.int64)
    for i, h in enumerate(hom_src.maps):
        key = tuple(map(int, g.map.table[h.table]))
        if key not in rank:
            raise ConsistencyError("postcomposition left the target hom carrier")
        table[i] = rank[key]
    out = is_cp_quadratic(MapTable(hom_src, hom_dst, table))
    if not out.passed:
        raise ConsistencyError("postcomposition by a quadratic pair map is not quadratic")
    gd = g.defects
    for r in range(ma.sr.re.order):
        for i, h in enumerate(hom_src.maps):
            expect = gd.scalar[r][h.table]
            got = hom_dst.maps[int(out.defects.scalar[r, i])].table
            if not np.array_equal(expect, got):
                raise ConsistencyError(
                    f"(g_*)_({r}) disagrees with g_({r})∘f at map {i}"
                )
    return out


def promote_to_cp(f: MapTable) -> QuadCertificate:
    """From a plain quadratic f: M → N to the pair map
    (M, [M,M]_R) → (im_R f, Z_R(im_R f)), certified quadratic."""
    base = is_bhp_quadratic(f)
    if not base.passed:
        raise CertificateInvalid(
            f"map is not quadratic: fails {base.verdict.failures[0].law}"
        )
    dom_pair = CpModule(f.dom.sr, f.dom.group, f.dom.scal, f.dom.bracket, derived_module(f.dom))
    image = generated_submodule(f.cod, {int(v) for v in f.table})
    sub, embed = submodule_module(f.cod, image)
    index = np.full(f.cod.nm, -1, dtype=np.int64)
    index[embed] = np.arange(len(image))
    cod_pair = CpModule(sub.sr, sub.group, sub.scal, sub.bracket, r_center(sub))
    out = is_cp_quadratic(MapTable(dom_pair, cod_pair, index[f.table]))
    if not out.passed:
        raise ConsistencyError(
            f"promoted pair map fails {out.verdict.failures[0].law}"
        )
    return out


def factorization_check(f: MapTable, ma: CpModule | None = None, nb: CpModule | None = None) -> Verdict:
    """The pointwise factorization properties of a quadratic pair map:
    d_f descends to a bilinear B-valued form on classes mod A, and f_(r)
    descends to a degree-2 form with bilinear polarization."""
    if (ma is None) != (nb is None):
        raise PreconditionUnmet("pass both pair modules or neither")
    if ma is not None:
        f = MapTable(ma, nb, f.table if isinstance(f, MapTable) else f)
    if not isinstance(f.dom, CpModule) or not isinstance(f.cod, CpModule):
        raise PreconditionUnmet("factorization check needs CP modules on both sides")
    bundle = defects(f)
    gate = run_laws(_cp_def_route_laws(f, bundle))
    if not gate.passed:
        first = gate.failures[0]
        raise PreconditionUnmet(
            f"factorization needs a quadratic pair map; {first.law} fails at {first.witness}"
        )
    return run_laws(_factorization_laws(f, bundle))
