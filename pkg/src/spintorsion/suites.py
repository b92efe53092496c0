"""Named verification suites producing flat check records.

Every record carries a ``check_id`` (sorted on output), an ``anchor`` naming
the function that implements the check, a status (``pass``, ``fail`` or
``skip``), a residual when the check is numerical and a witness string on
failure.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import connection as cn
from . import conjugation as cj
from . import fierz as fz
from . import geometry as geo
from . import superjacobi as sj
from .clifford import Signature, build_gamma, check_anticommutators, duality_map, index_sets
from .clifford import antisym_gamma_bruteforce, product_expand, product_expand_literal, volume_square_sign
from .exact import GMat

SUITES = ("clifford", "conjugation", "fierz", "admissibility", "bianchi", "brane", "jacobi")
REL_TOL = 1e-12


class ConfigError(ValueError):
    """Invalid or unrealizable run configuration."""


@dataclass(frozen=True)
class Record:
    check_id: str
    anchor: str
    status: str
    residual: float | None = None
    witness: str | None = None

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class RunConfig:
    signature: Signature = field(default_factory=lambda: Signature(1, 3))
    delta0: int | None = None
    seed: int = 0
    samples: int = 50
    killing_a: tuple = (Fraction(1), Fraction(-2), Fraction(1, 3))
    brane_preset: str | None = "m5"
    brane_p: int | None = None
    brane_d: int | None = None
    brane_delta1: int = 1
    brane_delta2: int = 1
    brane_points: int = 10

    def echo(self) -> dict:
        return {
            "signature": [self.signature.t, self.signature.s],
            "delta0": self.delta0, "seed": self.seed, "samples": self.samples,
            "killing_a": [str(a) for a in self.killing_a],
            "brane": {"preset": self.brane_preset, "p": self.brane_p, "d": self.brane_d,
                      "delta1": self.brane_delta1, "delta2": self.brane_delta2,
                      "points": self.brane_points},
        }


def _rec(check_id, anchor, ok, residual=None, witness=None) -> Record:
    status = ok if isinstance(ok, str) else ("pass" if ok else "fail")
    if residual is not None:
        residual = float(residual)
    if status == "pass":
        witness = None
    return Record(check_id, anchor, status, residual, None if witness is None else str(witness))


def _small(residual: float, scale: float = 1.0) -> bool:
    return residual <= REL_TOL * max(1.0, scale)


def conjugations(cfg: RunConfig) -> list[cj.ChargeConjugation]:
    rep = build_gamma(cfg.signature)
    cands = cj.candidate_conjugations(rep)
    if cfg.delta0 is not None:
        cands = [c for c in cands if c.delta0 == cfg.delta0]
        if not cands:
            raise ConfigError(f"Delta_0 = {cfg.delta0:+d} is not realizable for signature "
                              f"({cfg.signature.t},{cfg.signature.s}); realizable: "
                              f"{cj.realizable_delta0(rep)}")
    return cands


def _tag(conj) -> str:
    return f"d0{'+' if conj.delta0 > 0 else '-'}d1{'+' if conj.delta1 > 0 else '-'}"


def random_spinor(dim: int, rng, bound: int = 3) -> GMat:
    return GMat.from_complex(rng.integers(-bound, bound + 1, dim) + 1j * rng.integers(-bound, bound + 1, dim))


# ----------------------------------------------------------------------------
# clifford

def _label_pairs(D: int, rng, samples: int):
    sets = [I for k in range(D + 1) for I in index_sets(D, k)]
    if D <= 6:
        return itertools.product(sets, repeat=2)
    return ((sets[i], sets[j]) for i, j in rng.integers(0, len(sets), (samples, 2)))


def clifford_suite(cfg: RunConfig) -> list[Record]:
    rep = build_gamma(cfg.signature)
    rng = np.random.default_rng(cfg.seed)
    D = rep.D
    out = []
    bad = check_anticommutators(rep)
    out.append(_rec("clifford.anticommutators", "clifford.check_anticommutators", not bad,
                    witness=bad[:1] or None))
    sq = rep.vol @ rep.vol
    want = volume_square_sign(rep.signature)
    out.append(_rec("clifford.volume_square", "clifford.volume_square_sign",
                    sq == rep.identity().scale(want), witness=f"predicted {want:+d}"))
    worst = None
    for k in range(min(D, 4) + 1):
        for I in itertools.islice(index_sets(D, k), 12):
            if antisym_gamma_bruteforce(rep, I) != rep.gamma(I):
                worst = I
    out.append(_rec("clifford.antisymmetrization", "clifford.antisym_gamma_bruteforce", worst is None,
                    witness=worst))
    miss = count = 0
    first = None
    for lower, upper in _label_pairs(D, rng, max(200, cfg.samples)):
        count += 1
        if product_expand(rep, lower, upper) != rep.gamma(lower) @ rep.gamma(upper, upper=True):
            miss += 1
            first = first or (lower, upper)
    out.append(_rec("clifford.product_expansion", "clifford.product_expand", miss == 0,
                    residual=miss, witness=f"{miss}/{count} mismatches, first {first}"))
    miss = 0
    for lower, upper in itertools.islice(_label_pairs(min(D, 4), rng, 40), 60):
        if product_expand_literal(rep, lower, upper) != product_expand(rep, lower, upper):
            miss += 1
    out.append(_rec("clifford.product_expansion_literal", "clifford.product_expand_literal", miss == 0,
                    residual=miss))
    miss = 0
    first = None
    for k in range(D + 1):
        for I in index_sets(D, k):
            if duality_map(rep, I) != rep.gamma(I):
                miss += 1
                first = first or I
    out.append(_rec("clifford.duality", "clifford.duality_map", miss == 0, residual=miss, witness=first))
    return out


# ----------------------------------------------------------------------------
# conjugation

def conjugation_suite(cfg: RunConfig) -> list[Record]:
    out = []
    for conj in conjugations(cfg):
        tag = _tag(conj)
        D = conj.rep.D
        table = {k: conj.delta_k(k, all_sets=D <= 6) for k in range(D + 1)}
        closed = [k for k in table if table[k] != cj.delta_closed_form(k, conj.delta0, conj.delta1)]
        rec = [k for k in range(2, D + 1) if table[k] != -table[k - 2]]
        out.append(_rec(f"conjugation.{tag}.delta_closed_form", "conjugation.delta_closed_form",
                        not closed, witness=closed))
        out.append(_rec(f"conjugation.{tag}.delta_recursion", "conjugation.ChargeConjugation.delta_k",
                        not rec, witness=rec))
        split = cj.adjoint_split(conj)
        badsplit = [k for k, v in split.items() if v != conj.delta0 * table[k]]
        out.append(_rec(f"conjugation.{tag}.adjoint_split", "conjugation.adjoint_split", not badsplit,
                        witness=badsplit))
        meas, pred = cj.parallel_span_check(conj)
        out.append(_rec(f"conjugation.{tag}.parallel_span", "conjugation.parallel_span_check",
                        meas == pred, witness=f"measured {sorted(meas)} predicted {sorted(pred)}"))
        if D % 2 == 0:
            ok, why = cj.table_row_matches(conj)
            out.append(_rec(f"conjugation.{tag}.chirality_table", "conjugation.table_row_matches", ok,
                            witness=why))
    return out


# ----------------------------------------------------------------------------
# fierz

def fierz_suite(cfg: RunConfig) -> list[Record]:
    out = []
    rng = np.random.default_rng(cfg.seed)
    for conj in conjugations(cfg):
        dim = conj.rep.dim_s
        miss = 0
        for _ in range(cfg.samples):
            phi, psi = random_spinor(dim, rng), random_spinor(dim, rng)
            if fz.fierz_expand(conj, phi, psi) != fz.rank_one_map(conj, phi, psi):
                miss += 1
        out.append(_rec(f"fierz.{_tag(conj)}.reconstruction", "fierz.fierz_expand", miss == 0,
                        residual=miss, witness=f"{miss}/{cfg.samples} pairs differ"))
    return out


# ----------------------------------------------------------------------------
# admissibility

def admissibility_suite(cfg: RunConfig) -> list[Record]:
    out = []
    rng = np.random.default_rng(cfg.seed)
    for conj in conjugations(cfg):
        tag = _tag(conj)
        rows = cn.admissibility_scan(conj, cfg.seed)
        bad = [r for r in rows if not r["agree"]]
        wit = None if not bad else {k: bad[0][k] for k in ("degree", "placement", "star")}
        out.append(_rec(f"admissibility.{tag}.rule_vs_brute_force", "connection.admissibility_scan",
                        not bad, residual=len(bad), witness=wit))
        D = conj.rep.D
        if D >= 3:
            res = cn.metric_connection_check(conj, cn.random_form(D, 3, rng))
            out.append(_rec(f"admissibility.{tag}.metric_three_form", "connection.metric_connection_check",
                            res["admissible"] and res["torsion_is_2A"], witness=res))
        if D == 11:
            F = cn.random_form(D, 4, rng)
            res = cn.sugra_check(conj, F)
            out.append(_rec(f"admissibility.{tag}.sugra_admissible", "connection.sugra_check",
                            res["admissible"], witness=res["witness"]))
            out.append(_rec(f"admissibility.{tag}.sugra_torsion_formula", "connection.sugra_prediction",
                            not res["mismatches"], residual=len(res["mismatches"]),
                            witness=f"measured two-form coefficient "
                                    f"{[str(q) for q in res['measured_two_form_coefficient']]}"
                                    f", expected {cn.SUGRA_TWO}"))
    return out


# ----------------------------------------------------------------------------
# Bianchi identities on flat bases

def bianchi_suite(cfg: RunConfig) -> list[Record]:
    out = []
    sig = cfg.signature
    try:
        conj = geo.killing_conjugation(sig)
    except ValueError as exc:
        conj = None
        out.append(_rec("bianchi.killing", "geometry.killing_conjugation", "skip", witness=exc))
    if conj is not None:
        for a in cfg.killing_a:
            key = f"bianchi.killing.a={a}"
            rep = geo.geometric_killing_report(conj, a)
            for name in ("admissible", "torsion_4a", "curvature_2a2", "curvature_conjugate",
                         "dT_minus16a2", "adR_8a2", "bianchi_lhs_zero", "bianchi_rhs_zero"):
                out.append(_rec(f"{key}.{name}", "geometry.geometric_killing_report", rep[name]))
            out.append(_rec(f"{key}.dT_minus16a_literal", "geometry.geometric_killing_report",
                            rep["dT_minus16a"],
                            witness="holds with -16 a^2; the linear coefficient matches only at a = 1"))
            out.append(_rec(f"{key}.second_bianchi", "geometry.killing_second_bianchi",
                            geo.killing_second_bianchi(conj, a)))
        out.append(_rec("bianchi.killing.compatibility", "geometry.compatibility_check",
                        geo.compatibility_check(conj, geo.killing_potentials(conj, 1), cfg.seed)))
    if sig.D >= 3:
        rng = np.random.default_rng(cfg.seed)
        T = geo.random_three_form(sig.D, rng)
        res = geo.r0_from_skew_torsion(T, sig.metric)
        out.append(_rec("bianchi.skew_torsion.sigma_four_form", "geometry.r0_from_skew_torsion",
                        _small(res["sigma_skew_residual"], res["scale"]), residual=res["sigma_skew_residual"]))
        out.append(_rec("bianchi.skew_torsion.r0_formula", "geometry.r0_from_skew_torsion",
                        _small(res["formula_residual"], res["scale"]), residual=res["formula_residual"],
                        witness=f"curvature fit on (TT/4, sigma): {res['fit']['R'][:2]}"))
        out.append(_rec("bianchi.skew_torsion.quarter_sigma_identity", "geometry.r0_from_skew_torsion",
                        _small(res["quarter_sigma_residual"], res["scale"]),
                        residual=res["quarter_sigma_residual"]))
    return out


# ----------------------------------------------------------------------------
# brane backgrounds

def custom_brane(p: int, d: int, delta1: int, delta2: int) -> geo.BraneBackground:
    """Brane parameters solving the compatibility system with alpha3 = 1."""
    eps = 1 if (d * (d + 1) // 2) % 2 == 0 else 1j
    sd = (-1) ** d
    a3 = Fraction(1)
    a2 = Fraction(1, d - 2)
    a1 = -Fraction(d - 2, p + 1) * a2
    alpha = -complex(a2) * eps / (sd * delta2 * 2 * math.factorial(d - 2) * complex(a3))
    beta = complex(a1) * eps / (sd * delta1 * 2 * math.factorial(d - 1) * complex(a3))
    center = tuple(0.1 * (k + 1) * (-1) ** k for k in range(d))
    return geo.BraneBackground(p, d, a1, a2, a3, alpha, beta, delta1, delta2, eps,
                               geo.Profile("radial-log", center=center))


def brane_background(cfg: RunConfig) -> geo.BraneBackground:
    try:
        if cfg.brane_p is not None or cfg.brane_d is not None:
            if cfg.brane_p is None or cfg.brane_d is None:
                raise ConfigError("custom branes need both p and d")
            if cfg.brane_p < 0 or cfg.brane_d < 3:
                raise ConfigError("custom branes need p >= 0 and d >= 3")
            bg =custom_brane(cfg.brane_p, cfg.brane_d, cfg.brane_delta1, cfg.brane_delta2)
        else:
            if cfg.brane_preset not in geo.PRESETS:
                raise ConfigError(f"unknown brane preset {cfg.brane_preset!r}")
            bg = geo.PRESETS[cfg.brane_preset]()
        bg.validate()
    except (geo.BraneConstraintError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    if bg.D > 12:
        raise ConfigError(f"brane dimension {bg.D} exceeds 12")
    return bg


def brane_suite(cfg: RunConfig, expected_holonomy: int | None = 106) -> list[Record]:
    bg = brane_background(cfg)
    name = cfg.brane_preset if cfg.brane_p is None else f"p{cfg.brane_p}d{cfg.brane_d}"
    key = f"brane.{name}"
    G = geo.BraneGeometry(bg)
    rng = np.random.default_rng(cfg.seed + 1)
    pts = [0.5 * rng.normal(size=bg.d) for _ in range(cfg.brane_points)]
    out = []
    worst = scale = 0.0
    for y in pts:
        m = G.torsion_match(y)
        worst = max(worst, m["hat_d_gamma"])
        scale = max(scale, m["scale"])
    out.append(_rec(f"{key}.torsion_closed_form", "geometry.BraneGeometry.torsion_match",
                    worst < 1e-9, residual=worst))
    y = pts[0]
    out.append(_rec(f"{key}.christoffel_closed_form", "geometry.BraneGeometry.christoffel_closed_form",
                    _christoffel_gap(G, y) < 1e-9, residual=_christoffel_gap(G, y)))
    r = G.spin_connection_residual(G.point(y, order=1))
    out.append(_rec(f"{key}.spin_connection", "geometry.BraneGeometry.spin_connection_residual",
                    r < 1e-9, residual=r))
    adm = G.admissibility(y)
    out.append(_rec(f"{key}.admissible", "geometry.BraneGeometry.admissibility", adm.admissible,
                    witness=adm.witness))
    b = G.bianchi_residuals(y)
    for k in ("DT", "DR"):
        out.append(_rec(f"{key}.bianchi_{k}", "geometry.BraneGeometry.bianchi_residuals",
                        b["residual"][k] < 1e-9, residual=b["residual"][k]))
    out.append(_rec(f"{key}.bianchi_DadR", "geometry.BraneGeometry.bianchi_residuals",
                    b["residual"]["DadR"] < 1e-9, residual=b["residual"]["DadR"],
                    witness=f"residual against half the right side: {b['residual']['DadR_half']:.3g}"))
    cc = G.curvature_conjugate_residual(y)
    out.append(_rec(f"{key}.curvature_conjugate", "geometry.BraneGeometry.curvature_conjugate_residual",
                    cc < 1e-9, residual=cc))
    fam = G.parallel_family(pts[:3])
    want = G.gam[0].shape[0] // 2
    out.append(_rec(f"{key}.parallel_family_dim", "geometry.BraneGeometry.parallel_family",
                    fam.dim == want, residual=fam.dim, witness=f"dimension {fam.dim}, expected {want}"))
    if fam.dim:
        pr = max(G.parallel_residual(fam, z) for z in pts[:4])
        out.append(_rec(f"{key}.parallel_residual", "geometry.BraneGeometry.parallel_residual",
                        pr < 1e-10, residual=pr))
        kc = G.killing_check(fam, y)
        out.append(_rec(f"{key}.killing_vectors", "geometry.BraneGeometry.killing_check",
                        kc["lie_derivative"] < 1e-7, residual=kc["lie_derivative"]))
        out.append(_rec(f"{key}.killing_torsion_identity", "geometry.BraneGeometry.killing_check",
                        kc["torsion_identity"] < 1e-9, residual=kc["torsion_identity"]))
        tf = G.torsion_free_subset(fam, y)
        out.append(_rec(f"{key}.torsion_free_subset", "geometry.BraneGeometry.torsion_free_subset",
                        tf["d_term"] < 1e-9, residual=tf["d_term"],
                        witness=f"subset dimension {tf['dim']}"))
        out.append(_rec(f"{key}.torsion_free_subset_nonempty", "geometry.BraneGeometry.torsion_free_subset",
                        tf["dim"] > 0, residual=tf["dim"],
                        witness="grad u acts invertibly by Clifford multiplication"))
    else:
        for c in ("parallel_residual", "killing_vectors", "killing_torsion_identity", "torsion_free_subset"):
            out.append(_rec(f"{key}.{c}", "geometry.BraneGeometry.parallel_family", "skip",
                            witness="empty parallel family"))
    fs = G.first_summand_check(y)
    out.append(_rec(f"{key}.first_summand", "geometry.BraneGeometry.first_summand_check", fs < 1e-9,
                    residual=fs))
    hol = G.holonomy(y)
    if expected_holonomy is not None:
        out.append(_rec(f"{key}.holonomy_dim", "geometry.BraneGeometry.holonomy",
                        hol.dim == expected_holonomy, residual=hol.dim,
                        witness=f"dimension {hol.dim}, expected {expected_holonomy}"))
    spinors = fam.basis if fam.dim else np.eye(G.gam[0].shape[0])[:, :4]
    b2 = G.bianchi2_residual(y, spinors)
    out.append(_rec(f"{key}.second_bianchi", "geometry.BraneGeometry.bianchi2_residual",
                    b2["minus_r0"]["residual"] < 1e-9, residual=b2["minus_r0"]["residual"],
                    witness=f"opposite sign of the Levi-Civita term leaves "
                            f"{b2['plus_r0']['residual']:.3g}"))
    return out


def _christoffel_gap(G, y) -> float:
    a = G.christoffel(y, order=0)
    b = G.christoffel_closed_form(y)
    keys = set(a) | set(b)
    return max(abs(complex(a[k].value if k in a else 0) - complex(b.get(k, 0))) for k in keys)


# ----------------------------------------------------------------------------
# fiber checks in four dimensions

def jacobi_suite(cfg: RunConfig) -> list[Record]:
    sig = cfg.signature if cfg.signature.D == 4 else Signature(1, 3)
    try:
        conj = geo.killing_conjugation(sig)
    except ValueError:
        sig = Signature(1, 3)
        conj = geo.killing_conjugation(sig)
    rng = np.random.default_rng(cfg.seed)
    N = conj.rep.dim_s
    out = []
    configs = [("flat", [np.zeros((N, N), dtype=complex)] * 4)]
    configs += [(f"killing_a={a}", sj.killing_potential(conj, float(a))) for a in cfg.killing_a]
    for label, A in configs:
        key = f"jacobi.{label}"
        model = sj.FiberModel(conj, A)
        data = model.point_data()
        cr = sj.commutation_relations(model, cfg.seed)
        for k, v in cr.items():
            out.append(_rec(f"{key}.commutator_{k}", "superjacobi.commutation_relations", _small(v), residual=v))
        spin = [rng.normal(size=N) + 1j * rng.normal(size=N) for _ in range(3)]
        bi = sj.bracket_identity(model, spin[0], spin[1], cfg.seed)
        out.append(_rec(f"{key}.bracket_identity", "superjacobi.bracket_identity",
                        _small(bi["residual"], bi["scale"]), residual=bi["residual"]))
        js = sj.jacobi_sums(data, *spin)
        for part in ("order30_first", "order30_second", "order41_first", "order41_second"):
            out.append(_rec(f"{key}.cyclic_{part}", "superjacobi.jacobi_sums",
                            _small(js[part], js["scale"]), residual=js[part]))
        sym = sj.PointData(data.conj, data.gam, data.metric, sj.random_delta1_symmetric(data, rng),
                           data.R, data.DT, data.DR, data.R0)
        js2 = sj.jacobi_sums(sym, *spin)
        for part in ("order30_first", "order41_first"):
            out.append(_rec(f"{key}.cyclic_{part}_symmetric_tensor", "superjacobi.jacobi_sums",
                            _small(js2[part], js2["scale"]), residual=js2[part]))
        c = sj.cyclic_bianchi_sum(data, *spin)
        out.append(_rec(f"{key}.cyclic_bianchi_sum", "superjacobi.cyclic_bianchi_sum", _small(c), residual=c))
        b2 = sj.bianchi2_point(data, spin)
        out.append(_rec(f"{key}.second_bianchi", "superjacobi.bianchi2_point", _small(b2), residual=b2))
        fl = sj.flatness(data, spin[0])
        sq = sj.iota_square(model, spin[0], cfg.seed)
        consistent = fl["flat"] == _small(sq) and (fl["torsion_free"] or not fl["strongly_torsion_free"])
        out.append(_rec(f"{key}.differential", "superjacobi.flatness", consistent, residual=sq,
                        witness=f"flatness {fl}"))
    out.extend(pure_spinor_records(cfg))
    return out


def pure_spinor_records(cfg: RunConfig) -> list[Record]:
    out = []
    rep = build_gamma(Signature(0, 4))
    conj = cj.candidate_conjugations(rep)[0]
    for w in (1, -1):
        ps = fz.make_pure_spinor(rep, w)
        s = fz.wedge_duality_sign(rep, ps.spinor)
        out.append(_rec(f"jacobi.pure_w={w:+d}.wedge_duality", "fierz.wedge_duality_sign", s == -w,
                        witness=f"duality sign {s:+d}"))
        top, low = fz.selfdual_expressions(conj, ps, 0, 1)
        out.append(_rec(f"jacobi.pure_w={w:+d}.middle_degree_forms", "fierz.selfdual_expressions",
                        top == low))
    res = sj.pure_spinor_suite(20, cfg.seed)
    n = res["samples"]
    out.append(_rec("jacobi.pure.b_term_condition", "superjacobi.b_term_condition", res["b_agree"] == n,
                    residual=n - res["b_agree"], witness=f"{res['b_agree']}/{n} agree"))
    out.append(_rec("jacobi.pure.d_term_condition", "superjacobi.d_term_condition", res["d_agree"] == n,
                    residual=n - res["d_agree"], witness=f"{res['d_agree']}/{n} agree"))
    out.append(_rec("jacobi.pure.condition_has_zero_cases", "superjacobi.pure_spinor_suite",
                    res["b_zero_cases"] > 0 and res["d_zero_cases"] > 0))
    for (w, sd), v in sorted(res["selfdual"].items()):
        if sd == w:
            out.append(_rec(f"jacobi.pure_w={w:+d}.b_term_{'selfdual' if sd > 0 else 'antiselfdual'}",
                            "superjacobi.b_term", _small(v), residual=v))
    return out


SUITE_FUNCS = {
    "clifford": clifford_suite,
    "conjugation": conjugation_suite,
    "fierz": fierz_suite,
    "admissibility": admissibility_suite,
    "bianchi": bianchi_suite,
    "brane": brane_suite,
    "jacobi": jacobi_suite,
}


def run_suite(cfg: RunConfig, name: str) -> list[Record]:
    if name == "all":
        recs = []
        for s in SUITES:
            if s == "brane":
                continue
            if s == "jacobi" and cfg.signature.D != 4:
                recs.append(_rec("jacobi", "superjacobi", "skip", witness="fiber checks run in four dimensions"))
                continue
            recs.extend(SUITE_FUNCS[s](cfg))
        return sorted(recs, key=lambda r: r.check_id)
    if name not in SUITE_FUNCS:
        raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    return sorted(SUITE_FUNCS[name](cfg), key=lambda r: r.check_id)


# ----------------------------------------------------------------------------
# tables and truncations

def _conj_with_product(rep, p):
    for c in cj.candidate_conjugations(rep):
        if c.delta0 * c.delta1 == p:
            return c
    return None


def tables_report(cfg: RunConfig) -> tuple[dict, list[Record]]:
    data = {"twist": {}, "kernels": {}, "chirality": {}}
    recs = []
    for p in (1, -1):
        conj = None
        for sig in (Signature(1, 9), Signature(0, 10), Signature(2, 8), Signature(1, 3), Signature(0, 4)):
            conj = _conj_with_product(build_gamma(sig), p)
            if conj is not None:
                break
        key = f"tables.twist.p={p:+d}"
        data["twist"][str(p)] = {str(i): {str(r): list(js) for r, js in row.items()}
                                  for i, row in cn.twisted_table(conj).items()}
        diff = cn.twist_table_diff(conj)
        recs.append(_rec(f"{key}.diff", "connection.twist_table_diff", not diff, residual=len(diff),
                         witness=diff[:1] or None))
        if conj.rep.D == 10:
            rows = cn.twisted_brute_force(conj, cfg.seed)
            bad = [r for r in rows if not r["agree"]]
            recs.append(_rec(f"{key}.doubled_brute_force", "connection.twisted_brute_force", not bad,
                             residual=len(bad), witness=bad[:1] or None))
    for D in (4, 6, 10):
        rep = build_gamma(Signature(1, D - 1))
        rows = cn.projector_report(rep)
        for r in rows:
            tag = f"tables.kernels.D={D}.i={r['i']}j={r['j']}w={r['w']:+d}"
            if "listed_kernel_ok" in r:
                data["kernels"].setdefault(str(D), {})[f"{r['i']}{r['j']}{r['w']:+d}"] = r["listed_kernel_ok"]
                flipped = cn.listed_kernel(rep, r["i"], r["j"], -r["w"])
                why = None
                if not r["listed_kernel_ok"] and cn.span_equal(cn.kernel_basis(rep, r["i"], r["j"], r["w"]), flipped):
                    why = "kernel equals the listed span for the opposite chirality sign"
                recs.append(_rec(f"{tag}.kernel", "connection.listed_kernel", r["listed_kernel_ok"], witness=why))
    for D in (2, 4, 6, 8):
        rep = build_gamma(Signature(1, D - 1))
        rowsD = {}
        for conj in cj.candidate_conjugations(rep):
            rowsD[_tag(conj)] = cj.symmetry_chirality_table(conj)
            ok, why = cj.table_row_matches(conj)
            recs.append(_rec(f"tables.chirality.D={D}.{_tag(conj)}", "conjugation.table_row_matches", ok,
                             witness=why))
        data["chirality"][str(D)] = rowsD
    return data, sorted(recs, key=lambda r: r.check_id)


IIB_STATEMENTS = {
    "j=0_full_content": (0, ()),
    "j=1_all_F_excluded": (1, ("F1", "F3", "F5", "F7", "F9")),
    "j=3_F1_F5_F9_H3_excluded": (3, ("F1", "F5", "F9", "H3")),
}


def iib_report(cfg: RunConfig) -> tuple[dict, list[Record]]:
    rep = build_gamma(Signature(1, 9))
    conj = conjugations(cfg)[0] if cfg.signature.D == 10 else cj.candidate_conjugations(rep)[0]
    res = cn.iib_truncations(conj, seed=cfg.seed)
    recs = []
    for name, (j, want) in IIB_STATEMENTS.items():
        got = res["excluded"][j]
        recs.append(_rec(f"iib.{name}", "connection.iib_truncations", tuple(sorted(want)) == got,
                         witness=f"excluded {list(got)}"))
    only = res["fully_admissible"]
    recs.append(_rec("iib.full_content_only_j=0", "connection.iib_truncations", only == (0,),
                     witness=f"fully admissible for {list(only)}"))
    data = {"excluded": {str(k): list(v) for k, v in res["excluded"].items()},
            "fully_admissible": list(only), "delta0": conj.delta0, "delta1": conj.delta1}
    return data, sorted(recs, key=lambda r: r.check_id)
