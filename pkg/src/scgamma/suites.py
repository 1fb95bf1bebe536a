"""Verification suites and machine-readable reports.

Each suite runs a set of named checks against a seeded random sample and
returns a ``Report``; a fixed ``SuiteConfig`` determines the report bytes
except for the wall-time field. The ``paper_anchor`` of each check names
the identity being verified.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import calculus as ca
from . import circle as ci
from . import holo as ho
from . import tensors as te
from .gamma import (AmbientVector, GammaSpec, ambient_norm, dimension,
                    fd_retraction_differential, frame, frame_coords, gamma_point,
                    make_spec, realized, retract, tangent_map, tangent_matrix,
                    to_tangent)
from .l2 import frame_element, l2_norm
from .sampling import (random_gamma_point, random_grid_fiber, random_raw_ambient,
                       random_raw_fiber, random_tangent)

SUITE_NAMES = (
    "retract", "chain-rule", "complex-structure", "symplectic", "integrability",
    "dbar", "embedding", "glued-transition", "pathological-phi", "tensor-norm",
    "scale-quotient",
)

_EVEN_DIM_SUITES = {"complex-structure", "symplectic", "integrability", "dbar"}
_EMBEDDING_SUITES = {"chain-rule", "embedding", "glued-transition", "pathological-phi"}

_DEFAULT_SAMPLES = {
    "retract": 1000,
    "chain-rule": 100,
    "complex-structure": 1000,
    "symplectic": 50,
    "integrability": 200,
    "dbar": 200,
    "embedding": 500,
    "glued-transition": 200,
    "pathological-phi": 200,
    "tensor-norm": 50,
    "scale-quotient": 50,
}


class SuiteUsageError(ValueError):
    """Bad suite name or parameters; maps to CLI exit code 2."""


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    n: int = 1
    k: int = 2
    seed: int = 7
    samples: int | None = None
    tol: float | None = None

    def sample_count(self) -> int:
        if self.samples is not None:
            if self.samples <= 0:
                raise SuiteUsageError("sample count must be positive")
            return self.samples
        return _DEFAULT_SAMPLES[self.suite]


@dataclass(frozen=True)
class CheckRecord:
    name: str
    paper_anchor: str
    max_error: float
    tolerance: float
    passed: bool


@dataclass
class Report:
    suite: str
    params: dict
    seed: int
    checks: list[CheckRecord]
    passed: bool
    wall_time_s: float

    def to_dict(self, include_wall_time: bool = True) -> dict:
        d = {
            "suite": self.suite,
            "params": self.params,
            "seed": self.seed,
            "checks": [asdict(c) for c in self.checks],
            "pass": self.passed,
        }
        if include_wall_time:
            d["wall_time_s"] = self.wall_time_s
        return d

    def to_json(self, include_wall_time: bool = True) -> str:
        return json.dumps(self.to_dict(include_wall_time), sort_keys=True, indent=2)


class _Checks:
    """Accumulates check records, applying a global tolerance override."""

    def __init__(self, tol_override: float | None):
        self.records: list[CheckRecord] = []
        self.tol_override = tol_override

    def add(self, name: str, anchor: str, max_error: float, tol: float,
            passed: bool | None = None):
        tol = self.tol_override if self.tol_override is not None else tol
        err = float(max_error)
        ok = bool(err < tol) if passed is None else bool(passed)
        self.records.append(CheckRecord(name, anchor, err, tol, ok))


# ---------------------------------------------------------------------------
# retract


def _suite_retract(cfg: SuiteConfig, ch: _Checks):
    spec = make_spec(cfg.n, cfg.k)
    rng = np.random.default_rng(cfg.seed)
    count = cfg.sample_count()

    idem = 0.0
    vanish = 0.0
    fixed = 0.0
    for i in range(count):
        negative = i % 2 == 1
        t = float(rng.uniform(0.05, 2.0)) * (-1.0 if negative else 1.0)
        x = rng.standard_normal(spec.n)
        if i % 8 == 7:
            raw = random_grid_fiber(spec, rng, spacing=1.0 / 512.0)
        else:
            raw = random_raw_fiber(spec, rng)
        p = retract(spec, x, t, raw)
        p2 = retract(spec, p.x, p.t, p.f)
        diff = (np.max(np.abs(p2.x - p.x)) + abs(p2.t - p.t)
                + l2_norm(p2.f - p.f if p.t > 0.0 else p2.f))
        idem = max(idem, diff)
        if t <= 0.0:
            vanish = max(vanish, l2_norm(p.f))
        else:
            q = gamma_point(spec, x, t, rng.standard_normal(spec.k))
            q2 = retract(spec, q.x, q.t, q.f)
            fixed = max(fixed, float(np.max(np.abs(q2.fiber_coeffs - q.fiber_coeffs))))
    ch.add("idempotence", "r(r(x,t,f)) = r(x,t,f) for the moving-frame projection",
           idem, 1e-10)
    ch.add("fiber-vanishing", "projection is 0 on {t <= 0}", vanish, 1e-12)
    ch.add("projection-fixes-range", "projection restricted to its range is the identity",
           fixed, 1e-12)

    # dimension jump and numerical rank of the tangent projection
    rank_err = 0.0
    proj_err = 0.0
    for i in range(min(count, 60)):
        p = random_gamma_point(spec, rng, t_range=(0.05, 2.0), negative=i % 2 == 1)
        m = tangent_matrix(spec, p)
        rank = int(np.sum(np.linalg.svd(m, compute_uv=False) > 1e-8))
        rank_err = max(rank_err, abs(rank - dimension(spec, p)))
        proj_err = max(proj_err, float(np.max(np.abs(m @ m - m))))
    ch.add("dimension-jump", "tangent rank is n+1 on {t <= 0} and n+1+k on {t > 0}",
           rank_err, 0.5)
    ch.add("tangent-projection-law", "Tr composed with itself equals Tr",
           proj_err, 1e-10)

    # analytic tangent map against the central-difference derivative of r
    n_oracle = max(10, count // 5)
    agree = 0.0
    ratios = []
    for i in range(n_oracle):
        negative = i % 4 == 3
        if negative:
            t = float(rng.uniform(-2.0, -0.5))
            p = gamma_point(spec, rng.standard_normal(spec.n), t)
            dv = random_raw_ambient(spec, rng, t=1.0)
        else:
            t = float(rng.uniform(1.0, 2.0))
            p = gamma_point(spec, rng.standard_normal(spec.n), t,
                            rng.standard_normal(spec.k))
            dv = random_raw_ambient(spec, rng, t=t)
        ana = realized(spec, p, tangent_map(spec, p, dv))
        scale = max(ambient_norm(ana), 1.0)
        e3 = ambient_norm(fd_retraction_differential(spec, p.x, p.t, p.f, dv, 1e-3)
                          - ana) / scale
        e4 = ambient_norm(fd_retraction_differential(spec, p.x, p.t, p.f, dv, 1e-4)
                          - ana) / scale
        agree = max(agree, e4)
        if not negative and e4 > 1e-14:
            ratios.append(e3 / e4)
    ch.add("tangent-oracle-agreement",
           "analytic Tr matches central differences of r", agree, 1e-6)
    med = float(np.median(ratios)) if ratios else 100.0
    ch.add("tangent-oracle-order2",
           "central-difference error decays at second order in the step",
           abs(np.log10(med) - 2.0), 0.7)


# ---------------------------------------------------------------------------
# chain rule


def _suite_chain_rule(cfg: SuiteConfig, ch: _Checks):
    spec = make_spec(cfg.n, cfg.k)
    rng = np.random.default_rng(cfg.seed)
    count = cfg.sample_count()

    worst = 0.0
    for i in range(count):
        negative = i % 4 == 3
        t = float(rng.uniform(-2.0, -0.5)) if negative else float(rng.uniform(1.0, 2.0))
        x = rng.standard_normal(spec.n)
        raw = random_raw_fiber(spec, rng, t_range=(max(t, 0.5), max(t, 0.5) + 1.0)) \
            if not negative else random_raw_fiber(spec, rng)
        dv = random_raw_ambient(spec, rng, t=abs(t))
        # base the curve at the retracted point: the product formula uses the
        # retraction differential at points of the retract
        p = retract(spec, x, t, raw)
        product = ho.iota_tangent(spec, p, tangent_map(spec, p, dv))

        def composite(step: float) -> np.ndarray:
            plus = ho.iota(spec, retract(spec, x + step * dv.dx, t + step * dv.dt,
                                         p.f + step * dv.fiber))
            minus = ho.iota(spec, retract(spec, x - step * dv.dx, t - step * dv.dt,
                                          p.f + (-step) * dv.fiber))
            return (np.asarray(plus) - np.asarray(minus)) / (2.0 * step)

        fd = (4.0 * composite(5e-4) - composite(1e-3)) / 3.0
        err = float(np.max(np.abs(fd - np.asarray(product))))
        scale = max(float(np.max(np.abs(np.asarray(product)))), 1.0)
        worst = max(worst, err / scale)
    ch.add("composite-differential",
           "T(embed after r) equals T(embed) composed with Tr", worst, 1e-6)


# ---------------------------------------------------------------------------
# complex structure


def _suite_complex_structure(cfg: SuiteConfig, ch: _Checks):
    spec = make_spec(cfg.n, cfg.k)
    J = te.ComplexStructureJ(spec)
    rng = np.random.default_rng(cfg.seed)
    count = cfg.sample_count()

    jj = 0.0
    for i in range(count):
        p = random_gamma_point(spec, rng, negative=i % 3 == 2)
        v = random_tangent(spec, rng, p)
        w = J.apply(p, J.apply(p, v)) + v
        jj = max(jj, float(np.linalg.norm(frame_coords(spec, p, w))))
    ch.add("j-squared", "J(J(v)) = -v on every tangent fiber", jj, 1e-10)

    pairing = 0.0
    dim = spec.n + 1 + spec.k
    for i in range(40):
        p = random_gamma_point(spec, rng, negative=i % 2 == 1)
        for ell in range(1, dim + 1):
            jmu = J.apply(p, frame(spec, ell, p))
            target = frame(spec, ell + 1, p) if ell % 2 == 1 \
                else -1.0 * frame(spec, ell - 1, p)
            pairing = max(pairing, float(np.linalg.norm(
                frame_coords(spec, p, jmu - target))))
    ch.add("frame-pairing",
           "J sends odd frame fields to the next field and even ones to minus the previous",
           pairing, 1e-12)


# ---------------------------------------------------------------------------
# symplectic


def _suite_symplectic(cfg: SuiteConfig, ch: _Checks):
    spec = make_spec(cfg.n, cfg.k)
    J = te.ComplexStructureJ(spec)
    g = te.metric_frame(spec)
    rng = np.random.default_rng(cfg.seed)
    count = cfg.sample_count()
    dim = spec.n + 1 + spec.k

    sweep = [random_gamma_point(spec, rng, t_range=(0.1, 2.0)) for _ in range(count)]
    sweep_neg = [random_gamma_point(spec, rng, t_range=(0.1, 2.0), negative=True)
                 for _ in range(max(4, count // 10))]

    ortho = 0.0
    compat = 0.0
    herm = 0.0
    h = te.hermitian(spec, g, J)
    for p in sweep[:10] + sweep_neg[:4]:
        vs = [frame(spec, ell, p) for ell in range(1, dim + 1)]
        for a, va in enumerate(vs):
            for b, vb in enumerate(vs):
                expect = 1.0 if a == b and (p.t > 0.0 or a < spec.n + 1) else 0.0
                ortho = max(ortho, abs(g(p, va, vb) - expect))
        compat = max(compat, te.compatibility_defect(spec, g, J, p))
        v = random_tangent(spec, rng, p)
        w = random_tangent(spec, rng, p)
        a = complex(rng.standard_normal(), rng.standard_normal())
        # h = g + i g(J., .) is conjugate-linear in its first slot and linear
        # in the second under the scalar action a.v = Re(a) v + Im(a) Jv
        herm = max(herm, abs(h(p, te.complex_scale(J, p, a, v), w)
                             - np.conj(a) * h(p, v, w)))
        herm = max(herm, abs(h(p, v, te.complex_scale(J, p, a, w)) - a * h(p, v, w)))
        herm = max(herm, abs(h(p, v, w) - np.conj(h(p, w, v))))
        herm = max(herm, abs(h(p, J.apply(p, v), J.apply(p, w)) - h(p, v, w)))
        if p.t > 0.0:
            nv = float(np.linalg.norm(frame_coords(spec, p, v)))
            if nv > 1e-6:
                herm = max(herm, abs(h(p, v, v) - nv**2))
    ch.add("metric-orthonormal", "the frame fields are g-orthonormal", ortho, 1e-12)
    ch.add("compatibility", "g(Jv, Jw) = g(v, w)", compat, 1e-10)
    ch.add("hermitian-axioms",
           "h = g + i g(J., .) is sesquilinear, conjugate-symmetric, J-invariant, positive",
           herm, 1e-10)

    gi = te.compatibilize(spec, te.ambient_metric(spec), J)
    comp2 = max(te.compatibility_defect(spec, gi, J, p) for p in sweep[:6])
    raw_defect = max(te.compatibility_defect(spec, te.ambient_metric(spec), J, p)
                     for p in sweep[:6])
    ch.add("compatibilize-ambient",
           "g(v,w) + g(Jv,Jw) is J-compatible even though the raw inner product is not",
           comp2, 1e-10, passed=comp2 < 1e-10 and raw_defect > 1e-6)

    omega = te.fundamental_form(spec, g, J, check_points=sweep[:3])
    const_err = 0.0
    value_err = 0.0
    base_vals = {}
    for p in sweep:
        for a in range(1, dim + 1):
            for b in range(1, dim + 1):
                val = omega(p, frame(spec, a, p), frame(spec, b, p))
                value_err = max(value_err, abs(val - round(val)),
                                0.0 if abs(round(val)) <= 1.0 else abs(val))
                if (a, b) in base_vals:
                    const_err = max(const_err, abs(val - base_vals[(a, b)]))
                else:
                    base_vals[(a, b)] = val
    ch.add("omega-frame-values",
           "omega(mu_i, mu_j) is constant on {t > 0} with values in {0, 1, -1}",
           max(const_err, value_err), 1e-10)

    # closedness over all frame triples
    fields = [ca.frame_field(spec, ell) for ell in range(1, dim + 1)]
    closed = 0.0
    for p in sweep[:count] + sweep_neg[:2]:
        for (a, b, c) in itertools.combinations(range(dim), 3):
            val = ca.exterior_derivative_at(spec, omega,
                                            [fields[a], fields[b], fields[c]], p)
            closed = max(closed, abs(val))
    ch.add("omega-closed", "d omega vanishes on all frame triples", closed, 1e-8)

    exact = 0.0
    fd_err = 0.0
    fd_sweep = [p for p in sweep if p.t >= 0.7][:max(6, count // 8)] + sweep_neg[:2]
    for p in sweep[:max(6, count // 8)]:
        for (a, b) in itertools.combinations(range(dim), 2):
            exact = max(exact, ambient_norm(ca.lie_bracket_ambient(
                spec, fields[a], fields[b], p)))
    for p in fd_sweep:
        for (a, b) in itertools.combinations(range(dim), 2):
            mu_fd = ca.VectorField(fields[a].name, fields[a].eval)
            nu_fd = ca.VectorField(fields[b].name, fields[b].eval)
            fd_err = max(fd_err, ambient_norm(ca.lie_bracket_ambient(
                spec, mu_fd, nu_fd, p)))
    ch.add("frame-brackets-analytic",
           "[mu_i, mu_j] = 0 via the analytic frame differentials", exact, 1e-12)
    ch.add("frame-brackets-fd",
           "[mu_i, mu_j] = 0 via central-difference differentials", fd_err, 1e-6)

    # d(d f) = 0 with scale-level bookkeeping
    def fval(p):
        return p.x[spec.n - 1] * p.t

    def fdiff(p, v):
        return p.t * v.dx[spec.n - 1] + p.x[spec.n - 1] * v.dt

    f0 = ca.ScalarFunction("x_n t", fval, fdiff, level=0)
    df = ca.exterior_derivative(spec, f0)
    ddf = ca.exterior_derivative(spec, df)
    dd_err = 0.0
    for p in sweep[:max(6, count // 8)]:
        for (a, b) in itertools.combinations(range(min(dim, 4)), 2):
            dd_err = max(dd_err, abs(ddf(p, fields[a], fields[b])))
    levels_ok = (df.level, ddf.level) == (f0.level + 1, f0.level + 2)
    ch.add("d-squared", "d(df) = 0 on coordinate functions, level rising by 2",
           dd_err, 1e-6, passed=dd_err < 1e-6 and levels_ok)


# ---------------------------------------------------------------------------
# integrability


def _suite_integrability(cfg: SuiteConfig, ch: _Checks):
    spec = make_spec(cfg.n, cfg.k)
    J = te.ComplexStructureJ(spec)
    rng = np.random.default_rng(cfg.seed)
    count = cfg.sample_count()
    dim = spec.n + 1 + spec.k

    frame_exact = 0.0
    for i in range(6):
        p = random_gamma_point(spec, rng, t_range=(0.2, 2.0), negative=i % 3 == 2)
        for (a, b) in itertools.combinations(range(1, dim + 1), 2):
            mu = ca.frame_field(spec, a)
            nu = ca.frame_field(spec, b)
            nj = ca.nijenhuis(spec, mu, nu, J, p)
            frame_exact = max(frame_exact, ca.tangent_norm(spec, p, nj))
    ch.add("nijenhuis-frame-fields",
           "N_J(mu_i, mu_j) = 0 for all frame pairs (analytic brackets)",
           frame_exact, 1e-12)

    def random_field():
        coeff_fns = []
        for _ in range(dim):
            a = 0.5 * rng.standard_normal(4)
            coeff_fns.append(lambda p, a=a: a[0] + a[1] * p.x[spec.n - 1]
                             + a[2] * p.t + a[3] * p.x[spec.n - 1] * p.t)
        return ca.scaled_combo_field(spec, coeff_fns, regularity=2)

    worst = 0.0
    asym = 0.0
    for i in range(count):
        p = random_gamma_point(spec, rng, t_range=(0.5, 2.0), negative=i % 5 == 4)
        mu = random_field()
        nu = random_field()
        nj = ca.nijenhuis(spec, mu, nu, J, p)
        worst = max(worst, ca.tangent_norm(spec, p, nj))
        if i % 10 == 0:
            nj_t = ca.nijenhuis(spec, nu, mu, J, p)
            asym = max(asym, ca.tangent_norm(spec, p, nj + nj_t))
            self_nj = ca.nijenhuis(spec, mu, mu, J, p)
            asym = max(asym, ca.tangent_norm(spec, p, self_nj))
    ch.add("nijenhuis-random-combos",
           "N_J = 0 on random smooth combinations of frame fields (FD brackets)",
           worst, 1e-6)
    ch.add("nijenhuis-antisymmetry", "N_J(v, w) = -N_J(w, v) and N_J(v, v) = 0",
           asym, 1e-6)


# ---------------------------------------------------------------------------
# dbar


def _suite_dbar(cfg: SuiteConfig, ch: _Checks):
    spec = make_spec(cfg.n, cfg.k)
    J = te.ComplexStructureJ(spec)
    rng = np.random.default_rng(cfg.seed)
    count = cfg.sample_count()
    n = spec.n

    pi = ca.coordinate_projection(spec)
    dim = spec.n + 1 + spec.k
    dbar_pi = 0.0
    for i in range(count):
        p = random_gamma_point(spec, rng, negative=i % 3 == 2)
        for ell in range(1, dim + 1):
            dbar_pi = max(dbar_pi, abs(ca.dbar(spec, pi, J, p, frame(spec, ell, p))))
    ch.add("dbar-projection-vanishes",
           "dbar of x_n + i t is identically zero", dbar_pi, 1e-10)

    conj = ca.ScalarFunction("x_n - i t",
                             lambda p: complex(p.x[n - 1], -p.t),
                             lambda p, v: complex(v.dx[n - 1], -v.dt))
    exact_one = 0.0
    for i in range(10):
        p = random_gamma_point(spec, rng, negative=i % 2 == 1)
        val = ca.dbar(spec, conj, J, p, frame(spec, n, p))
        exact_one = max(exact_one, abs(val - 1.0))
    ch.add("dbar-conjugate-coordinate",
           "dbar of x_n - i t sends the n-th frame field to exactly 1",
           exact_one, 1e-15)

    def poly(p):
        return p.x[n - 1] ** 2 * p.t + p.t**3

    def dpoly(p, v):
        return 2.0 * p.x[n - 1] * p.t * v.dx[n - 1] + (p.x[n - 1] ** 2 + 3 * p.t**2) * v.dt

    funcs = [pi, conj, ca.ScalarFunction("poly", poly, dpoly),
             ca.ScalarFunction("fiber-coeff", lambda p: p.x[n - 1] * p.t, None)]
    split = 0.0
    for i in range(max(10, count // 10)):
        p = random_gamma_point(spec, rng, t_range=(0.3, 2.0), negative=i % 4 == 3)
        v = random_tangent(spec, rng, p)
        for f in funcs:
            total = (ca.partial_op(spec, f, J, p, v) + ca.dbar(spec, f, J, p, v))
            d = ca.directional_derivative(spec, f, p, v)
            split = max(split, abs(total - d))
    ch.add("partial-plus-dbar", "partial f + dbar f equals the full differential",
           split, 1e-12)

    points = [random_gamma_point(spec, rng, negative=i % 3 == 2) for i in range(20)]
    rep = ho.is_sc_holomorphic(
        spec, J, points,
        lambda p, v: complex(v.dx[n - 1], -v.dt), name="conjugation")
    ch.add("conjugation-fails",
           "the conjugate coordinate has commutation defect exactly 2",
           abs(rep.max_defect - 2.0), 1e-12, passed=not rep.passed
           and abs(rep.max_defect - 2.0) < 1e-12)

    # bidegree split of the fundamental form and the eigenspace projections
    g = te.metric_frame(spec)
    omega = te.fundamental_form(spec, g, J)
    omega_c = ca.complexify_form(spec, omega)
    proj_err = 0.0
    type_err = 0.0
    for i in range(10):
        p = random_gamma_point(spec, rng, negative=i % 5 == 4)
        v = random_tangent(spec, rng, p)
        w = random_tangent(spec, rng, p)
        v10 = ca.varpi(spec, J, p, v, (1, 0))
        v01 = ca.varpi(spec, J, p, v, (0, 1))
        resolved = v10 + v01
        proj_err = max(proj_err, ca.ct_norm(
            spec, p, resolved - ca.complexified(v)))
        jv = ca.ct_apply_j(J, p, v10)
        proj_err = max(proj_err, ca.ct_norm(spec, p, jv - v10.scale(1j)))
        again = ca.varpi(spec, J, p, v10, (1, 0))
        proj_err = max(proj_err, ca.ct_norm(spec, p, again - v10))
        total = sum(ca.bidegree_project(spec, omega_c, st, J)(p, v, w)
                    for st in ((2, 0), (1, 1), (0, 2)))
        type_err = max(type_err, abs(total - omega_c(p, v, w)))
        w01 = ca.varpi(spec, J, p, w, (0, 1))
        type_err = max(type_err, abs(
            ca.bidegree_project(spec, omega_c, (2, 0), J)(p, v, w)))
        type_err = max(type_err, abs(
            ca.bidegree_project(spec, omega_c, (0, 2), J)(p, v, w)))
        type_err = max(type_err, abs(
            omega_c(p, v10, w01) + omega_c(p, ca.varpi(spec, J, p, v, (0, 1)),
                                           ca.varpi(spec, J, p, w, (1, 0)))
            - ca.bidegree_project(spec, omega_c, (1, 1), J)(p, v, w)))
    ch.add("eigenspace-projections",
           "the (1,0) and (0,1) projections are idempotent and complementary",
           proj_err, 1e-12)
    ch.add("fundamental-form-type",
           "the fundamental form is pure type (1,1)", type_err, 1e-10)


# ---------------------------------------------------------------------------
# embedding


def _suite_embedding(cfg: SuiteConfig, ch: _Checks):
    spec = make_spec(cfg.n, cfg.k)
    J = te.ComplexStructureJ(spec)
    rng = np.random.default_rng(cfg.seed)
    count = cfg.sample_count()

    defect = 0.0
    member = 0.0
    images = []
    for i in range(count):
        p = random_gamma_point(spec, rng, negative=i % 3 == 2)
        v = random_tangent(spec, rng, p)
        tv = np.asarray(ho.iota_tangent(spec, p, v))
        tjv = np.asarray(ho.iota_tangent(spec, p, J.apply(p, v)))
        defect = max(defect, float(np.max(np.abs(tjv - 1j * tv))))
        z, w = ho.iota(spec, p)
        if not ho.in_embedding_image(z, w):
            member += 1.0
        images.append((z, w, p))
    ch.add("embedding-holomorphy",
           "T(embed) after J equals i times T(embed)", defect, 1e-10)
    ch.add("image-membership",
           "the image is the closed lower half-plane slice plus the open upper half-space",
           member, 0.5)

    inj = 0.0
    for (z1, w1, p1), (z2, w2, p2) in itertools.combinations(images[:60], 2):
        same_img = abs(z1 - z2) + abs(w1 - w2) < 1e-12
        same_pt = (abs(p1.t - p2.t) < 1e-12
                   and float(np.max(np.abs(p1.x - p2.x))) < 1e-12)
        if same_img and not same_pt:
            inj += 1.0
    ch.add("injectivity-sampled", "distinct sampled points have distinct images",
           inj, 0.5)

    p_neg = gamma_point(spec, [2.0], -1.0)
    err = abs(ho.iota(spec, p_neg)[0] - complex(2.0, -1.0)) \
        + abs(ho.iota(spec, p_neg)[1])
    p_pos = gamma_point(spec, [0.0], 0.5, [3.0, 4.0])
    z, w = ho.iota(spec, p_pos)
    err = max(err, abs(z - 0.5j), abs(w - complex(3.0, 4.0)))
    ch.add("embedding-formula-values",
           "(2,-1,0) maps to (2-i, 0); coefficients (3,4) at t=1/2 map to (i/2, 3+4i)",
           err, 1e-12)


# ---------------------------------------------------------------------------
# glued transition


def _suite_glued_transition(cfg: SuiteConfig, ch: _Checks):
    spec = make_spec(cfg.n, cfg.k)
    J = te.ComplexStructureJ(spec)
    rng = np.random.default_rng(cfg.seed)
    count = cfg.sample_count()

    rational = 0.0
    for (x, t, sig, tau) in ((1.0, 1.0, 0.5, 0.5), (2.0, 1.0, 0.4, 0.2),
                             (1.0, 2.0, 0.2, 0.4), (3.0, 4.0, 0.12, 0.16),
                             (1.0, -1.0, 0.5, -0.5)):
        xs, ts = ho.transition_plane_map(x, t)
        rational = max(rational, abs(xs + sig), abs(ts - tau))
    p0 = gamma_point(spec, [1.0], 1.0)
    q0 = ho.transition(spec, p0)
    rational = max(rational, abs(q0.x[0] + 0.5), abs(q0.t - 0.5))
    ch.add("transition-rational-values",
           "sigma = x/(t^2+x^2) and tau = t/(t^2+x^2) at rational points",
           rational, 1e-15)

    cr = 0.0
    invol = 0.0
    jdef = 0.0
    dinv = 0.0
    for i in range(count):
        negative = i % 4 == 3
        p = random_gamma_point(spec, rng, t_range=(0.05, 2.0), negative=negative)
        if abs(p.t) ** 2 + p.x[0] ** 2 < 1e-6:
            continue
        sx, st, tx, tt = ho.transition_plane_partials(p.x[0], p.t)
        cr = max(cr, abs(sx + tt), abs(st - tx))
        q = ho.transition(spec, p)
        back = ho.transition(spec, q)
        invol = max(invol, abs(back.x[0] - p.x[0]), abs(back.t - p.t))
        if p.t > 0.0:
            invol = max(invol, float(np.max(np.abs(
                back.fiber_coeffs - p.fiber_coeffs))))
        jdef = max(jdef, ho.transition_j_defect(spec, J, p))
        v = random_tangent(spec, rng, p)
        dv = ho.transition_differential(spec, p, v)
        vv = ho.transition_differential(spec, q, dv)
        dinv = max(dinv, float(np.linalg.norm(frame_coords(spec, p, vv - v))))
    ch.add("cauchy-riemann-relations",
           "d sigma/dx = -d tau/dt and d sigma/dt = d tau/dx", cr, 1e-12)
    ch.add("transition-involution", "the transition composed with itself is the identity",
           invol, 1e-10)
    ch.add("transition-j-commutation",
           "J commutes with the transition differential", jdef, 1e-8)
    ch.add("transition-differential-involution",
           "the differential composed with itself at the paired points is the identity",
           dinv, 1e-10)

    # finite-difference oracle for the transition differential; both the point
    # and its image parameter tau = t/(t^2 + x^2) must stay in the range where
    # central differences across the exp(1/t) translation are trustworthy
    fd_err = 0.0
    for i in range(max(10, count // 8)):
        t = float(rng.uniform(0.8, 1.2))
        p = gamma_point(spec, 0.5 * rng.uniform(-1.0, 1.0, size=spec.n), t,
                        rng.standard_normal(spec.k))
        v = random_tangent(spec, rng, p)
        q = ho.transition(spec, p)
        ana = realized(spec, q, ho.transition_differential(spec, p, v))

        def tr_ambient(step: float) -> AmbientVector:
            a = realized(spec, p, v)
            pl = ho.transition(spec, retract(spec, p.x + step * a.dx,
                                             p.t + step * a.dt, p.f + step * a.fiber))
            mi = ho.transition(spec, retract(spec, p.x - step * a.dx,
                                             p.t - step * a.dt,
                                             p.f + (-step) * a.fiber))
            sc = 1.0 / (2.0 * step)
            return AmbientVector(sc * (pl.x - mi.x), sc * (pl.t - mi.t),
                                 sc * (pl.f + (-1.0) * mi.f))

        fd = (4.0 / 3.0) * tr_ambient(5e-4) - (1.0 / 3.0) * tr_ambient(1e-3)
        fd_err = max(fd_err, ambient_norm(fd - ana)
                     / max(ambient_norm(ana), 1.0))
    ch.add("transition-fd-oracle",
           "the analytic transition differential matches central differences",
           fd_err, 1e-6)

    # chart round trips and consistency through the transition
    def sample_glued(i: int) -> ho.GluedPoint:
        if i % 3 == 0:
            r = np.sqrt(rng.uniform(0.0, 0.96))
            ang = rng.uniform(0.0, 2.0 * np.pi)
            w = complex(rng.standard_normal(), rng.standard_normal())
            return ho.glued_point(r * np.exp(1j * ang), w)
        rad = rng.uniform(0.2, 3.0)
        ang = rng.uniform(0.0, 2.0 * np.pi)
        return ho.glued_point(rad * np.exp(1j * ang), 0.0)

    rt = 0.0
    consist = 0.0
    for i in range(count):
        q = sample_glued(i)
        if abs(q.z - 1.0) + abs(q.w) < 1e-6 or abs(q.z + 1.0) + abs(q.w) < 1e-6:
            continue
        p = ho.chart_phi(spec, q)
        q2 = ho.chart_phi_inv(spec, p)
        rt = max(rt, abs(q2.z - q.z) + abs(q2.w - q.w))
        p = ho.chart_psi(spec, q)
        q2 = ho.chart_psi_inv(spec, p)
        rt = max(rt, abs(q2.z - q.z) + abs(q2.w - q.w))
        a = ho.chart_phi(spec, q)
        b = ho.transition(spec, ho.chart_psi(spec, q))
        consist = max(consist, abs(a.x[0] - b.x[0]), abs(a.t - b.t))
        if a.t > 0.0:
            consist = max(consist, float(np.max(np.abs(
                a.fiber_coeffs - b.fiber_coeffs))))
    ch.add("chart-roundtrip", "each chart composes with its inverse to the identity",
           rt, 1e-10)
    ch.add("chart-consistency",
           "first chart equals the transition after the second chart on the overlap",
           consist, 1e-8)

    # partition-of-unity metric on the glued space
    wu, wv = ho.partition_weights(spec)
    part_err = 0.0
    for i in range(40):
        q = sample_glued(i)
        a, b = wu(q), wv(q)
        part_err = max(part_err, abs(a + b - 1.0), max(0.0, -a), max(0.0, -b))
    part_err = max(part_err, wu(ho.glued_point(1.0 + 1e-9, 0.0)),
                   wv(ho.glued_point(-1.0 + 1e-9j * 0, 0.0)))
    blend = te.blend_metric(spec, check_points=[sample_glued(i) for i in range(12)])
    spd = 0.0
    for i in range(min(count, 100)):
        # stay away from the seam circle |z| = 1, where the pullback shear
        # grows like exp(2/tau) and the Gram conditioning drowns the smallest
        # eigenvalue in roundoff
        if i % 2 == 0:
            r = np.sqrt(rng.uniform(0.0, 0.64))
            q = ho.glued_point(r * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)),
                               0.5 * complex(rng.standard_normal(),
                                             rng.standard_normal()))
        else:
            rad = rng.uniform(1.2, 3.0)
            q = ho.glued_point(rad * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)), 0.0)
        if abs(q.z - 1.0) + abs(q.w) < 0.05 or abs(q.z + 1.0) + abs(q.w) < 0.05:
            continue
        if q.on_cylinder:
            basis = [(1.0, 0.0), (1.0j, 0.0), (0.0, 1.0), (0.0, 1.0j)]
        else:
            basis = [(1.0, 0.0), (1.0j, 0.0)]
        gram = np.array([[blend(q, v, w) for w in basis] for v in basis])
        mineig = float(np.min(np.linalg.eigvalsh(gram)))
        spd = max(spd, max(0.0, 1e-10 - mineig))
    ch.add("blend-weights-partition",
           "the two weights are smooth, nonnegative, sum to 1, and avoid the deleted points",
           part_err, 1e-12)
    ch.add("blend-metric-positive",
           "the blended two-chart metric is positive definite on the glued space",
           spd, 1e-12)


# ---------------------------------------------------------------------------
# pathological phi


def _suite_pathological_phi(cfg: SuiteConfig, ch: _Checks):
    spec = make_spec(cfg.n, cfg.k)
    J = te.ComplexStructureJ(spec)
    rng = np.random.default_rng(cfg.seed)
    count = cfg.sample_count()

    zero = 0.0
    for _ in range(count):
        p = random_gamma_point(spec, rng, negative=True)
        zero = max(zero, abs(ho.phi_log(spec, p)))
    ch.add("phi-vanishes", "phi is identically 0 on {t <= 0}", zero, 1e-15)

    phi_fn = ca.ScalarFunction("phi", lambda p: ho.phi_log(spec, p),
                               lambda p, v: ho.phi_log_tangent(spec, p, v))
    dbar_err = 0.0
    dim = spec.n + 1 + spec.k
    for _ in range(count):
        p = random_gamma_point(spec, rng, t_range=(0.05, 2.0))
        for ell in range(1, dim + 1):
            dbar_err = max(dbar_err, abs(ca.dbar(spec, phi_fn, J, p,
                                                 frame(spec, ell, p))))
    ch.add("phi-dbar", "dbar phi = 0 for t in [0.05, 2]", dbar_err, 1e-8)

    points = [random_gamma_point(spec, rng, t_range=(0.05, 2.0)) for _ in range(30)]
    points += [random_gamma_point(spec, rng, negative=True) for _ in range(10)]
    rep = ho.is_sc_holomorphic(spec, J, points,
                               lambda p, v: ho.phi_log_tangent(spec, p, v),
                               name="phi", tol=1e-10)
    ch.add("phi-holomorphy", "T(phi) after J equals i T(phi) away from t = 0",
           rep.max_defect, 1e-10, passed=rep.passed)

    steps = (1e-1, 1e-2, 1e-3, 1e-4)
    mags = [abs(ho.phi_second_difference(spec, [1.0, 0.0], h)) for h in steps]
    growth_violation = max([0.0] + [mags[i] - mags[i + 1] for i in range(len(mags) - 1)])
    ch.add("second-difference-diverges",
           "the second t-difference across 0 grows without bound as the step shrinks",
           growth_violation, 1e-12, passed=growth_violation <= 0.0 and mags[-1] > mags[0])

    witness_err = 0.0
    for radius in (0.1, 0.01):
        wit = ho.non_extendability_witness(spec, radius, max(count, 100), cfg.seed)
        if not wit["witness"]:
            witness_err += 1.0
    ch.add("non-extendability-witness",
           "in every ball at 0 the pullback is 0 on the lower piece and nonzero above",
           witness_err, 0.5)


# ---------------------------------------------------------------------------
# tensor norm


def _suite_tensor_norm(cfg: SuiteConfig, ch: _Checks):
    rng = np.random.default_rng(cfg.seed)
    count = cfg.sample_count()

    cross = 0.0
    for _ in range(count):
        d1, d2 = rng.integers(2, 7, size=2)
        a = rng.standard_normal(d1)
        b = rng.standard_normal(d2)
        t = te.FiniteTensor((0, 2), np.outer(a, b))
        cross = max(cross, abs(te.injective_norm(t)
                               - np.linalg.norm(a) * np.linalg.norm(b)))
    ch.add("cross-norm", "the injective norm of a tensor product is the product of norms",
           cross, 1e-12)

    oracle_err = 0.0
    for _ in range(count):
        m = rng.standard_normal((4, 4))
        spec_norm = te.injective_norm(te.FiniteTensor((2, 0), m))
        lam = rng.standard_normal((100_000, 4))
        mu = rng.standard_normal((100_000, 4))
        lam /= np.linalg.norm(lam, axis=1, keepdims=True)
        mu /= np.linalg.norm(mu, axis=1, keepdims=True)
        vals = np.abs(np.einsum("ij,jk,ik->i", lam, m, mu))
        best = int(np.argmax(vals))
        lv, mv = lam[best], mu[best]
        for _ in range(40):
            lv = m @ mv
            lv /= np.linalg.norm(lv)
            mv = m.T @ lv
            mv /= np.linalg.norm(mv)
        oracle = abs(lv @ m @ mv)
        oracle_err = max(oracle_err, abs(spec_norm - oracle))
    ch.add("spectral-vs-sampling",
           "the injective norm equals the supremum over unit functionals",
           oracle_err, 1e-3)

    edge = te.injective_norm(te.FiniteTensor((0, 2), np.zeros((3, 3))))
    rejected = False
    try:
        te.injective_norm(te.FiniteTensor((1, 0), np.ones(3)))
    except ValueError:
        rejected = True
    ch.add("degenerate-cases", "zero tensor has norm 0; unsupported orders are rejected",
           edge, 1e-15, passed=edge == 0.0 and rejected)


# ---------------------------------------------------------------------------
# scale quotient


def _suite_scale_quotient(cfg: SuiteConfig, ch: _Checks):
    rng = np.random.default_rng(cfg.seed)
    count = cfg.sample_count()

    group = 0.0
    u = np.arange(256) / 256.0
    for _ in range(10):
        g0 = ci.random_c2_path(rng)
        s1, s2 = rng.uniform(-1.0, 1.0, size=2)
        lhs = ci.timeshift(s1, ci.timeshift(s2, g0))
        rhs = ci.timeshift(s1 + s2, g0)
        group = max(group, float(np.max(np.abs(lhs.value(u) - rhs.value(u)))))
        periodic = ci.timeshift(1.0, g0)
        group = max(group, float(np.max(np.abs(periodic.value(u) - g0.value(u)))))
    ch.add("timeshift-group-law",
           "shifting by s1 then s2 equals shifting by s1 + s2; period 1 is the identity",
           group, 1e-10)

    scales = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5)
    worst_final = 0.0
    worst_order = np.inf
    for _ in range(count):
        g0 = ci.random_c2_path(rng)
        s0 = float(rng.uniform(0.0, 1.0))
        direction = (float(rng.uniform(0.5, 1.5)), ci.random_c2_path(rng))
        rep = ci.sc1_quotient_test(
            ci.timeshift, (s0, g0),
            lambda ds, dg, s0=s0, g0=g0: ci.timeshift_differential(s0, g0, ds, dg),
            ci.scaled_increments(direction, scales), tol=1e-3)
        worst_final = max(worst_final, rep.ratios[-1])
        worst_order = min(worst_order, rep.order)
    ch.add("scale-quotient-smooth-paths",
           "the scale difference quotient of the time shift decays to 0 at twice "
           "continuously differentiable base paths",
           worst_final, 1e-3, passed=worst_final < 1e-3 and worst_order > 0.5)

    saw = ci.sawtooth_path()
    s0 = 0.37
    rep = ci.sc1_quotient_test(
        ci.timeshift, (s0, saw),
        lambda ds, dg: ci.timeshift_differential(s0, saw, ds, dg),
        ci.scaled_increments((1.0, ci.CirclePath(np.zeros(saw.coeffs.shape[0]))),
                             (1e-1, 1e-2, 1e-3, 1e-4)),
        denominator_level=0, tol=1e-3)
    min_ratio = min(rep.ratios)
    ch.add("classical-quotient-sawtooth",
           "the classical level-0 quotient stays above 0.1 at a sawtooth base path",
           max(0.0, 0.1 - min_ratio), 1e-12, passed=min_ratio > 0.1)

    g_fixed = ci.random_c2_path(rng)

    def linear_map(s, g):
        return ci.timeshift(0.37, g) * 2.0 + g_fixed * s

    base = (0.4, ci.random_c2_path(rng))
    rep = ci.sc1_quotient_test(
        linear_map, base, linear_map,
        ci.scaled_increments((1.0, ci.random_c2_path(rng)), (1e-1, 1e-2, 1e-3)),
        tol=1e-12)
    ch.add("linear-map-exact",
           "a linear map is its own differential: all quotients vanish",
           max(rep.ratios), 1e-12)


_SUITE_FNS = {
    "retract": _suite_retract,
    "chain-rule": _suite_chain_rule,
    "complex-structure": _suite_complex_structure,
    "symplectic": _suite_symplectic,
    "integrability": _suite_integrability,
    "dbar": _suite_dbar,
    "embedding": _suite_embedding,
    "glued-transition": _suite_glued_transition,
    "pathological-phi": _suite_pathological_phi,
    "tensor-norm": _suite_tensor_norm,
    "scale-quotient": _suite_scale_quotient,
}


def run_suite(config: SuiteConfig) -> Report:
    """Run one named suite; deterministic for a fixed config."""
    if config.suite not in _SUITE_FNS:
        raise SuiteUsageError(
            f"unknown suite {config.suite!r}; choose from {', '.join(SUITE_NAMES)}")
    if config.suite in _EVEN_DIM_SUITES | _EMBEDDING_SUITES:
        if config.n % 2 != 1 or config.k % 2 != 0:
            raise SuiteUsageError(
                f"suite {config.suite!r} needs an even-dimensional model: "
                f"n odd and k even, got (n, k) = ({config.n}, {config.k})")
    if config.suite in _EMBEDDING_SUITES and (config.n, config.k) != (1, 2):
        raise SuiteUsageError(
            f"suite {config.suite!r} is defined on the (n, k) = (1, 2) model")
    start = time.perf_counter()
    ch = _Checks(config.tol)
    _SUITE_FNS[config.suite](config, ch)
    elapsed = time.perf_counter() - start
    params = {"n": config.n, "k": config.k, "samples": config.sample_count()}
    if config.tol is not None:
        params["tol"] = config.tol
    return Report(config.suite, params, config.seed, ch.records,
                  all(c.passed for c in ch.records), elapsed)
