"""Registry of matrix-inequality checks evaluated on randomized instances."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Sequence

import numpy as np

from meanslab.config import SolverConfig
from meanslab.errors import ValidationError
from meanslab.models import CheckInstance, CheckReport, Comparison, NMeanSpec, SpdMatrix
from meanslab.services import constants, posmaps, spd
from meanslab.services.means2 import arithmetic, is_pmi
from meanslab.services.meansn import (
    adjoint_nmean,
    adjoint_spec,
    arithmetic_mean,
    harmonic_mean,
    karcher_mean,
    lie_trotter_errors,
    log_euclidean,
    nmean,
    power_mean,
)
from meanslab.services.oracles import diagonal_karcher, diagonal_nmean
from meanslab.services.validators import require, validate_interval

DEFAULT_TOLERANCE = 1e-9
FURUTA_SHRINK = 0.9


@dataclass(slots=True)
class CheckDefinition:
    """A named inequality family with its default parameter grid."""

    name: str
    func: Callable[["CheckContext"], None]
    description: str
    defaults: Dict[str, Any] = field(default_factory=dict)
    in_default: bool = True


class CheckContext:
    """Quantities shared by the comparisons of one check, computed on demand.

    Every comparison ``lower <= upper`` is recorded with its margin
    relative to max(1, |lower|, |upper|).
    """

    def __init__(self, instance: CheckInstance, params: Dict[str, Any], solver: SolverConfig) -> None:
        self.instance = instance
        self.params = params
        self.solver = solver
        self.m, self.M = instance.bounds.as_tuple()
        self.h = instance.bounds.h
        self.comparisons: List[Comparison] = []
        self._powers: Dict[float, List[SpdMatrix]] = {}
        self._deformed: Dict[float, SpdMatrix] = {}
        self._karcher: Dict[float, SpdMatrix] = {}

    # recording

    def leq(self, label: str, lower: spd.MatrixLike, upper: spd.MatrixLike) -> None:
        raw, scale = spd.loewner_margin(lower, upper)
        self.comparisons.append(Comparison(label=label, margin=raw / scale, raw=raw, scale=scale))

    def scalar_leq(self, label: str, lower: float, upper: float) -> None:
        raw = float(upper - lower)
        scale = max(1.0, abs(float(lower)), abs(float(upper)))
        self.comparisons.append(Comparison(label=label, margin=raw / scale, raw=raw, scale=scale))

    def agree(self, label: str, left: spd.MatrixLike, right: spd.MatrixLike) -> None:
        raw = -spd.op_norm(spd.as_array(left) - spd.as_array(right))
        scale = max(1.0, spd.op_norm(spd.as_array(left)), spd.op_norm(spd.as_array(right)))
        self.comparisons.append(Comparison(label=label, margin=raw / scale, raw=raw, scale=scale))

    # quantities

    @property
    def matrices(self) -> Sequence[SpdMatrix]:
        return self.instance.matrices

    @property
    def spec(self) -> NMeanSpec:
        return self.instance.mean

    def identity(self) -> np.ndarray:
        return np.eye(self.instance.dim)

    def identity_out(self) -> np.ndarray:
        return np.eye(self.instance.phi.dim_out)

    def mean(self, matrices: Sequence[SpdMatrix], spec: NMeanSpec | None = None) -> SpdMatrix:
        result, _ = nmean(spec or self.spec, matrices, self.solver)
        return result

    def powers(self, r: float) -> List[SpdMatrix]:
        """[A_1^r, ..., A_n^r]."""

        if r not in self._powers:
            self._powers[r] = [spd.mat_pow(A, r) for A in self.matrices]
        return self._powers[r]

    def deformed(self, r: float = 1.0) -> SpdMatrix:
        """M_sigma(A_1^r, ..., A_n^r)."""

        if r not in self._deformed:
            self._deformed[r] = self.mean(self.powers(r))
        return self._deformed[r]

    def karcher(self, r: float = 1.0) -> SpdMatrix:
        """G_w(A_1^r, ..., A_n^r)."""

        if r not in self._karcher:
            self._karcher[r], _ = karcher_mean(self.instance.weights, self.powers(r), self.solver)
        return self._karcher[r]

    def phi(self, A: spd.MatrixLike) -> np.ndarray:
        return posmaps.apply_map(self.instance.phi, A)

    def mapped(self, matrices: Sequence[SpdMatrix]) -> List[SpdMatrix]:
        return [posmaps.map_spd(self.instance.phi, A) for A in matrices]

    @property
    def uses_karcher(self) -> bool:
        return bool(self._karcher)


def _floats(values: Sequence[Any], name: str) -> List[float]:
    try:
        return [float(value) for value in values]
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"Parameter {name} must be a list of numbers, got {values!r}") from exc


def _pairs(values: Sequence[Any], name: str, strict: bool) -> List[tuple[float, float]]:
    try:
        pairs = [(float(q), float(p)) for q, p in values]
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"Parameter {name} must be a list of [q, p] pairs, got {values!r}") from exc
    for q, p in pairs:
        if not 0 < q or q > p or (strict and q == p):
            relation = "0 < q < p" if strict else "0 < q <= p"
            raise ValidationError(f"Parameter {name} needs {relation}, got ({q}, {p})")
    return pairs


def _positive(values: List[float], name: str) -> List[float]:
    for value in values:
        if not value > 0:
            raise ValidationError(f"Parameter {name} must be positive, got {value}")
    return values


def _label(**parts: float) -> str:
    return " ".join(f"{key}={value:.6g}" for key, value in parts.items())


# checks


def check_sandwich(ctx: CheckContext) -> None:
    """H_w <= M_sigma <= A_w, plus the adjoint identity (M_sigma)* = (M*)_{sigma*}."""

    weights = ctx.instance.weights
    X = ctx.deformed()
    ctx.leq("harmonic <= mean", harmonic_mean(weights, ctx.matrices), X)
    ctx.leq("mean <= arithmetic", X, arithmetic_mean(weights, ctx.matrices))
    if ctx.params["adjoint"]:
        left = adjoint_nmean(ctx.spec, ctx.matrices, ctx.solver)
        right = ctx.mean(ctx.matrices, adjoint_spec(ctx.spec))
        ctx.agree("adjoint identity", left, right)


def check_info_monotonicity(ctx: CheckContext) -> None:
    """Phi(M_sigma(A)) <= M_sigma(Phi(A))."""

    ctx.leq("Phi(mean) <= mean(Phi)", ctx.phi(ctx.deformed()), ctx.mean(ctx.mapped(ctx.matrices)))


def check_reverse_info_mono(ctx: CheckContext) -> None:
    """M_sigma(Phi(A)) <= alpha Phi(M_sigma(A)) + beta(m, M, alpha) I."""

    alphas = _positive(_floats(ctx.params["alphas"], "alphas"), "alphas")
    alphas.append(constants.kantorovich(ctx.h, -1.0))
    lhs = ctx.mean(ctx.mapped(ctx.matrices))
    image = ctx.phi(ctx.deformed())
    identity = ctx.identity_out()
    for alpha in alphas:
        bound = alpha * image + constants.beta(ctx.m, ctx.M, alpha) * identity
        ctx.leq(_label(alpha=alpha), lhs, bound)


def check_imah(ctx: CheckContext) -> None:
    """Ando-Hiai bounds with a positive map for r in (0, 1].

    M_sigma(Phi(A^r)) <= alpha Phi(M_sigma(A)^r) + gamma(1/M, 1/m, -r, alpha) I,
    and for r < 1 the two-sided ratio bounds with K(h, -r).
    """
    rs = _floats(ctx.params["rs"], "rs")
    for r in rs:
        require(validate_interval(r, "r", 0.0, 1.0, low_open=True))
    alphas = _positive(_floats(ctx.params["alphas"], "alphas"), "alphas")
    X = ctx.deformed()
    identity = ctx.identity_out()
    kant = constants.kantorovich_ratio(ctx.m, ctx.M)
    for r in rs:
        lhs = ctx.mean(ctx.mapped(ctx.powers(r)))
        image = ctx.phi(spd.mat_pow(X, r))
        k = constants.kantorovich(ctx.h, -r)
        for alpha in alphas + [k]:
            gap = constants.gamma(1.0 / ctx.M, 1.0 / ctx.m, -r, alpha)
            ctx.leq(_label(r=r, alpha=alpha), lhs, alpha * image + gap * identity)
        if r < 1.0:
            ctx.leq(_label(r=r) + " lower ratio", image / (kant * k), lhs)
            ctx.leq(_label(r=r) + " upper ratio", lhs, k * image)


def check_abr(ctx: CheckContext) -> None:
    """Ando-Hiai bounds with a positive map for r >= 1."""

    rs = _floats(ctx.params["rs"], "rs")
    for r in rs:
        if r < 1.0:
            raise ValidationError(f"Parameter r must be >= 1, got {r}")
    alphas = _positive(_floats(ctx.params["alphas"], "alphas"), "alphas")
    X = ctx.deformed()
    identity = ctx.identity_out()
    for r in rs:
        lhs = ctx.mean(ctx.mapped(ctx.powers(r)))
        image = ctx.phi(spd.mat_pow(X, r))
        k_plus = constants.kantorovich(ctx.h, r)
        k_minus = constants.kantorovich(ctx.h, -r)
        for alpha in alphas + [k_plus * k_minus]:
            gap = constants.gamma(1.0 / ctx.M, 1.0 / ctx.m, -r, alpha / k_plus)
            ctx.leq(_label(r=r, alpha=alpha), lhs, alpha * image + gap * identity)
        kant = constants.kantorovich_ratio(ctx.m**r, ctx.M**r)
        ctx.leq(_label(r=r) + " lower ratio", image / (kant * k_minus * k_plus), lhs)
        ctx.leq(_label(r=r) + " upper ratio", lhs, k_minus * k_plus * image)


def check_ahr(ctx: CheckContext) -> None:
    """Two-sided comparison of M_sigma(A^r) with M_sigma(A)^r, without a map.

    Also checks the normalized implication M_sigma(A) <= I => M_sigma(A^r) <= K I
    and the power-mean bound against its classical Kantorovich form.
    """
    low = _floats(ctx.params["low_rs"], "low_rs")
    high = _floats(ctx.params["high_rs"], "high_rs")
    for r in low:
        require(validate_interval(r, "r", 0.0, 1.0, low_open=True, high_open=True))
    for r in high:
        if r < 1.0:
            raise ValidationError(f"Parameter high_rs needs r >= 1, got {r}")
    X = ctx.deformed()
    scale = 1.0 / spd.op_norm(X)
    identity = ctx.identity()

    constants_by_r = [(r, constants.kantorovich(ctx.h, -r)) for r in low]
    constants_by_r += [(r, constants.kantorovich(ctx.h, -r) * constants.kantorovich(ctx.h, r)) for r in high]
    for r, k in constants_by_r:
        Y = ctx.deformed(r)
        Xr = spd.mat_pow(X, r).entries
        ctx.leq(_label(r=r) + " lower", Xr / k, Y)
        ctx.leq(_label(r=r) + " upper", Y, k * Xr)
        normalized = ctx.mean([spd.spd_from_entries(scale**r * A.entries) for A in ctx.powers(r)])
        ctx.leq(_label(r=r) + " normalized", normalized, k * identity)

    alpha = float(ctx.params["power_alpha"])
    require(validate_interval(alpha, "power_alpha", 0.0, 1.0, low_open=True, high_open=True))
    weights = ctx.instance.weights
    P = power_mean(weights, alpha, ctx.matrices, ctx.solver)
    kant = constants.kantorovich_ratio(ctx.m, ctx.M)
    for r in low:
        Pr = power_mean(weights, alpha, ctx.powers(r), ctx.solver)
        Pr_of_P = spd.mat_pow(P, r).entries
        k = constants.kantorovich(ctx.h, -r)
        ctx.leq(_label(r=r) + " power mean", Pr, k * Pr_of_P)
        ctx.leq(_label(r=r) + " power mean classical", Pr, kant**r * Pr_of_P)
        ctx.scalar_leq(_label(r=r) + " constant improvement", k, kant**r)


def _root_power(ctx: CheckContext, p: float) -> np.ndarray:
    return spd.mat_pow(ctx.deformed(p), 1.0 / p).entries


def check_order_interpolation(ctx: CheckContext) -> None:
    """Operator-order bounds between M_sigma(A^q)^{1/q} and M_sigma(A^p)^{1/p}, and their Specht limits."""

    pairs = _pairs(ctx.params["pairs"], "pairs", strict=False)
    specht_ps = _positive(_floats(ctx.params["specht_ps"], "specht_ps"), "specht_ps")
    for q, p in pairs:
        c = constants.order_interpolation_constant(ctx.h, q, p)
        Zq = _root_power(ctx, q)
        Zp = _root_power(ctx, p)
        ctx.leq(_label(q=q, p=p) + " lower", Zp / c, Zq)
        ctx.leq(_label(q=q, p=p) + " upper", Zq, c * Zp)

    le = log_euclidean(ctx.instance.weights, ctx.matrices).entries
    s_h = constants.specht(ctx.h)
    for p in specht_ps:
        s = s_h * constants.specht(ctx.h**p) ** (1.0 / p)
        Zp = _root_power(ctx, p)
        ctx.leq(_label(p=p) + " Specht lower", Zp / s, le)
        ctx.leq(_label(p=p) + " Specht upper", le, s * Zp)
    X = ctx.deformed().entries
    ctx.leq("log-Euclidean lower", X / s_h**2, le)
    ctx.leq("log-Euclidean upper", le, s_h**2 * X)


def check_norm_monotonicity(ctx: CheckContext) -> None:
    """Norm chain |M_sigma(A^q)|^{1/q} versus |M_sigma(A^p)|^{1/p}, with the Karcher variant."""

    pairs = _pairs(ctx.params["pairs"], "pairs", strict=True)
    ps = sorted({p for _, p in pairs})

    def norm_root(p: float) -> float:
        return spd.op_norm(ctx.deformed(p)) ** (1.0 / p)

    for q, p in pairs:
        c = constants.norm_chain_constant(ctx.h, q, p)
        ctx.scalar_leq(_label(q=q, p=p) + " lower", norm_root(p) / c, norm_root(q))
        ctx.scalar_leq(_label(q=q, p=p) + " upper", norm_root(q), c * norm_root(p))

    le_norm = spd.op_norm(log_euclidean(ctx.instance.weights, ctx.matrices))
    for p in ps:
        s = constants.specht(ctx.h**p) ** (1.0 / p)
        ctx.scalar_leq(_label(p=p) + " Specht lower", norm_root(p) / s, le_norm)
        ctx.scalar_leq(_label(p=p) + " Specht upper", le_norm, s * norm_root(p))
    s_h = constants.specht(ctx.h)
    X_norm = spd.op_norm(ctx.deformed())
    ctx.scalar_leq("log-Euclidean norm lower", X_norm / s_h, le_norm)
    ctx.scalar_leq("log-Euclidean norm upper", le_norm, s_h * X_norm)

    if not ctx.params["karcher"]:
        return

    def karcher_root(p: float) -> float:
        return spd.op_norm(ctx.karcher(p)) ** (1.0 / p)

    for q, p in pairs:
        improved, classical = constants.norm_chain_improvement(ctx.m, ctx.M, q, p)
        ctx.scalar_leq(_label(q=q, p=p) + " Karcher chain", karcher_root(q), improved * karcher_root(p))
        ctx.scalar_leq(_label(q=q, p=p) + " Karcher chain classical", karcher_root(q), classical * karcher_root(p))
        ctx.scalar_leq(_label(q=q, p=p) + " constant improvement", improved, classical)
    for p in ps:
        s = constants.specht(ctx.h**p) ** (1.0 / p)
        ctx.scalar_leq(_label(p=p) + " Karcher Specht", le_norm, s * karcher_root(p))


def check_karcher_ah(ctx: CheckContext) -> None:
    """G_w(A) <= I implies G_w(A^r) <= I for r >= 1, and the norm-scaled Ando-Hiai form."""

    rs = _floats(ctx.params["rs"], "rs")
    for r in rs:
        if r < 1.0:
            raise ValidationError(f"Parameter r must be >= 1, got {r}")
    weights = ctx.instance.weights
    identity = ctx.identity()
    G = ctx.karcher()
    norm_G = spd.op_norm(G)
    t = 1.0 / norm_G
    scaled, _ = karcher_mean(weights, [spd.spd_from_entries(t * A.entries) for A in ctx.matrices], ctx.solver)
    ctx.leq("G(tA) <= I", scaled, identity)

    H = harmonic_mean(weights, ctx.matrices)
    norm_H = spd.op_norm(H)
    for r in rs:
        powered, _ = karcher_mean(weights, [spd.spd_from_entries(t**r * A.entries) for A in ctx.powers(r)], ctx.solver)
        ctx.leq(_label(r=r) + " G((tA)^r) <= I", powered, identity)
        ctx.leq(_label(r=r) + " Karcher Ando-Hiai", ctx.karcher(r), norm_G ** (r - 1.0) * G.entries)
        ctx.leq(
            _label(r=r) + " harmonic Ando-Hiai",
            harmonic_mean(weights, ctx.powers(r)),
            norm_H ** (r - 1.0) * H.entries,
        )


def check_jensen(ctx: CheckContext) -> None:
    """Jensen-gap bounds for Phi(X^r) against Phi(X)^r with X = A_j, and Choi's inequality with its reverse."""

    rs = _floats(ctx.params["rs"], "rs")
    for r in rs:
        if abs(r) < constants.R_GUARD or abs(r - 1.0) < constants.R_GUARD:
            raise ValidationError(f"Parameter r must avoid 0 and 1, got {r}")
    alphas = _positive(_floats(ctx.params["alphas"], "alphas"), "alphas")
    identity = ctx.identity_out()
    kant = constants.kantorovich_ratio(ctx.m, ctx.M)
    for j, A in enumerate(ctx.matrices):
        PX = posmaps.map_spd(ctx.instance.phi, A)
        for r in rs:
            Phi_Xr = ctx.phi(ctx.powers(r)[j])
            PXr = spd.mat_pow(PX, r).entries
            concave = 0.0 < r < 1.0
            for alpha in alphas:
                shifted = alpha * PXr + constants.gamma(ctx.m, ctx.M, r, alpha) * identity
                label = _label(j=j, r=r, alpha=alpha) + " gap"
                if concave:
                    ctx.leq(label, shifted, Phi_Xr)
                else:
                    ctx.leq(label, Phi_Xr, shifted)
            k = constants.kantorovich(ctx.h, r)
            if concave:
                ctx.leq(_label(j=j, r=r) + " ratio", k * PXr, Phi_Xr)
                ctx.leq(_label(j=j, r=r) + " Davis-Choi-Jensen", Phi_Xr, PXr)
            else:
                ctx.leq(_label(j=j, r=r) + " ratio", Phi_Xr, k * PXr)
                if -1.0 <= r < 0.0 or 1.0 < r <= 2.0:
                    ctx.leq(_label(j=j, r=r) + " Davis-Choi-Jensen", PXr, Phi_Xr)
        inverse_image = ctx.phi(spd.mat_inv(A))
        inverse_of_image = spd.mat_inv(PX).entries
        ctx.leq(_label(j=j) + " Choi", inverse_of_image, inverse_image)
        ctx.leq(_label(j=j) + " reverse Choi", inverse_image, kant * inverse_of_image)


def check_furuta(ctx: CheckContext) -> None:
    """A >= B > 0 gives B^p <= K(h, p) A^p for p >= 1 and B^p <= A^p for p in (0, 1]."""

    ps = _floats(ctx.params["ps"], "ps")
    for p in ps:
        if p < 1.0:
            raise ValidationError(f"Parameter ps needs p >= 1, got {p}")
    heinz_ps = _floats(ctx.params["heinz_ps"], "heinz_ps")
    for p in heinz_ps:
        require(validate_interval(p, "heinz_ps", 0.0, 1.0, low_open=True))
    for j, A in enumerate(ctx.matrices):
        rng = np.random.default_rng([ctx.instance.seed, j])
        v = rng.standard_normal(A.dim)
        c = FURUTA_SHRINK / float(v @ spd.mat_inv(A).entries @ v)
        B = spd.spd_from_entries(spd.symmetrize(A.entries - c * np.outer(v, v)))
        h_B = B.bounds.h
        for p in ps:
            Bp = spd.mat_pow(B, p)
            Ap = spd.mat_pow(A, p).entries
            ctx.leq(_label(j=j, p=p) + " K(h_A)", Bp, constants.kantorovich(ctx.h, p) * Ap)
            ctx.leq(_label(j=j, p=p) + " K(h_B)", Bp, constants.kantorovich(h_B, p) * Ap)
        for p in heinz_ps:
            ctx.leq(_label(j=j, p=p) + " Loewner-Heinz", spd.mat_pow(B, p), spd.mat_pow(A, p))


def check_pmi_ah(ctx: CheckContext) -> None:
    """Harmonic base deformed by a p.m.i. mean keeps M(A^r) <= |M(A)|^{r-1} M(A) and |M(A^r)| <= |M(A)|^r for r >= 1.

    Deformations that are not p.m.i. fall back to the weighted arithmetic mean.
    """

    rs = _floats(ctx.params["rs"], "rs")
    for r in rs:
        if r < 1.0:
            raise ValidationError(f"Parameter r must be >= 1, got {r}")
    sigma = ctx.spec.deform
    if sigma is None or sigma.kind in ("left_trivial", "custom") or not is_pmi(sigma):
        sigma = arithmetic(sigma.alpha if sigma is not None and sigma.alpha is not None else 0.5)
    spec = NMeanSpec(base="harmonic", weights=ctx.instance.weights, deform=sigma)
    X = ctx.mean(ctx.matrices, spec)
    norm_X = spd.op_norm(X)
    for r in rs:
        Y = ctx.mean(ctx.powers(r), spec)
        ctx.leq(_label(r=r) + " order", Y, norm_X ** (r - 1.0) * X.entries)
        ctx.scalar_leq(_label(r=r) + " norm", spd.op_norm(Y), norm_X**r)


def check_lie_trotter(ctx: CheckContext) -> None:
    """The Lie-Trotter error e(p) at least shrinks by the given ratio when p halves."""

    ps = _positive(_floats(ctx.params["ps"], "ps"), "ps")
    ratio = float(ctx.params["ratio"])
    points = sorted(set(ps) | {p / 2.0 for p in ps}, reverse=True)
    errors = dict(zip(points, lie_trotter_errors(ctx.spec, ctx.matrices, points, ctx.solver)))
    for p in ps:
        ctx.scalar_leq(_label(p=p), errors[p / 2.0], ratio * errors[p])


def _scalar_oracle(ctx: CheckContext) -> None:
    """Commuting inputs: the matrix means must equal their entrywise scalar counterparts."""

    diagonals = [np.diag(A.entries) for A in ctx.matrices]
    expected = np.diag(diagonal_nmean(ctx.spec, diagonals))
    ctx.agree("scalar_oracle mean", ctx.deformed(), expected)
    if ctx.uses_karcher:
        expected_g = np.diag(diagonal_karcher(ctx.instance.weights.w, diagonals))
        ctx.agree("scalar_oracle karcher", ctx.karcher(), expected_g)


REGISTRY: Dict[str, CheckDefinition] = {
    definition.name: definition
    for definition in (
        CheckDefinition("sandwich", check_sandwich, "H_w <= M_sigma <= A_w and the adjoint identity", {"adjoint": True}),
        CheckDefinition("info_monotonicity", check_info_monotonicity, "Phi(M_sigma(A)) <= M_sigma(Phi(A))"),
        CheckDefinition(
            "reverse_info_mono",
            check_reverse_info_mono,
            "M_sigma(Phi(A)) <= alpha Phi(M_sigma(A)) + beta I (alpha grid plus K(h,-1))",
            {"alphas": [0.25, 0.5, 1.0, 2.0]},
        ),
        CheckDefinition(
            "imah",
            check_imah,
            "Ando-Hiai with a positive map, r in (0,1], gamma and K(h,-r) bounds",
            {"rs": [0.25, 0.5, 0.75], "alphas": [0.5, 1.0, 2.0]},
        ),
        CheckDefinition(
            "abr",
            check_abr,
            "Ando-Hiai with a positive map, r >= 1, K(h,r) K(h,-r) bounds",
            {"rs": [1.5, 2.0, 3.0], "alphas": [0.5, 1.0, 2.0]},
        ),
        CheckDefinition(
            "ahr",
            check_ahr,
            "M_sigma(A^r) against M_sigma(A)^r, normalized implication, power means",
            {"low_rs": [0.25, 0.5, 0.75], "high_rs": [1.5, 2.0, 3.0], "power_alpha": 0.5},
        ),
        CheckDefinition(
            "order_interpolation",
            check_order_interpolation,
            "M_sigma(A^q)^(1/q) against M_sigma(A^p)^(1/p) and Specht limits",
            {"pairs": [[1.0, 2.0], [1.5, 3.0], [0.5, 1.0], [0.25, 2.0]], "specht_ps": [1.0, 2.0]},
        ),
        CheckDefinition(
            "norm_monotonicity",
            check_norm_monotonicity,
            "Norm chain of deformed and Karcher means with Specht limits",
            {"pairs": [[1.0, 2.0], [1.5, 3.0], [0.5, 1.0], [0.25, 2.0]], "karcher": True},
        ),
        CheckDefinition(
            "karcher_ah",
            check_karcher_ah,
            "G(A) <= I implies G(A^r) <= I; norm-scaled Ando-Hiai for G_w and H_w",
            {"rs": [1.5, 2.0, 3.0]},
        ),
        CheckDefinition(
            "jensen",
            check_jensen,
            "Jensen gap and ratio bounds for Phi(X^r), Davis-Choi-Jensen, Choi and reverse Choi",
            {"rs": [-1.0, -0.5, 0.5, 1.5, 2.0, 3.0], "alphas": [0.5, 1.0, 2.0]},
        ),
        CheckDefinition(
            "furuta",
            check_furuta,
            "B^p <= K(h,p) A^p for A >= B, and Loewner-Heinz",
            {"ps": [1.5, 2.0, 3.0], "heinz_ps": [0.25, 0.5, 0.75, 1.0]},
        ),
        CheckDefinition(
            "pmi_ah",
            check_pmi_ah,
            "Ando-Hiai for the harmonic base deformed by a p.m.i. mean",
            {"rs": [1.5, 2.0, 3.0]},
        ),
        CheckDefinition(
            "lie_trotter",
            check_lie_trotter,
            "e(p/2) <= ratio e(p) for the Lie-Trotter error",
            {"ps": [0.2, 0.1, 0.05, 0.025], "ratio": 0.75},
            in_default=False,
        ),
    )
}


def default_suite() -> List[str]:
    return [name for name, definition in REGISTRY.items() if definition.in_default]


def resolve_names(text: str) -> List[str]:
    """Parse a comma separated list of check names; "all" selects the default suite."""

    names: List[str] = []
    for part in (item.strip() for item in text.split(",")):
        if not part:
            continue
        if part == "all":
            names.extend(name for name in default_suite() if name not in names)
            continue
        if part not in REGISTRY:
            raise ValidationError(f"Unknown check {part!r}; valid names: all, {', '.join(REGISTRY)}")
        if part not in names:
            names.append(part)
    return names


def get_check(name: str) -> CheckDefinition:
    definition = REGISTRY.get(name)
    if definition is None:
        raise ValidationError(f"Unknown check {name!r}; valid names: {', '.join(REGISTRY)}")
    return definition


def merge_params(definition: CheckDefinition, params: Mapping[str, Any] | None) -> Dict[str, Any]:
    """Defaults overridden by params; unknown keys are rejected."""

    merged = {key: _plain(value) for key, value in definition.defaults.items()}
    for key, value in (params or {}).items():
        if key not in definition.defaults:
            raise ValidationError(f"Unknown parameter {key!r} for check {definition.name}")
        merged[key] = _plain(value)
    return merged


def _plain(value: Any) -> Any:
    """Copy with tuples turned into lists, so params round-trip through JSON unchanged."""

    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    return value


def run_check(
    name: str,
    instance: CheckInstance,
    params: Mapping[str, Any] | None = None,
    solver: SolverConfig | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckReport:
    """Evaluate one check on one instance.

    Raises:
        ValidationError: unknown check or invalid params
        SolverError: a mean did not converge
    """
    definition = get_check(name)
    merged = merge_params(definition, params)
    ctx = CheckContext(instance, merged, solver or SolverConfig())
    definition.func(ctx)
    if instance.commuting:
        _scalar_oracle(ctx)
    margin = min((comparison.margin for comparison in ctx.comparisons), default=0.0)
    return CheckReport(
        name=name,
        params=merged,
        margin=margin,
        holds=bool(margin >= -tolerance),
        seed=instance.seed,
        dim=instance.dim,
        n=instance.n,
        bounds=instance.bounds.as_tuple(),
        commuting=instance.commuting,
        comparisons=ctx.comparisons,
    )


def error_report(name: str, instance: CheckInstance, params: Mapping[str, Any] | None, error: Exception) -> CheckReport:
    """Report for a check that raised before completing."""

    return CheckReport(
        name=name,
        params=merge_params(get_check(name), params),
        margin=math.nan,
        holds=False,
        seed=instance.seed,
        dim=instance.dim,
        n=instance.n,
        bounds=instance.bounds.as_tuple(),
        commuting=instance.commuting,
        error=f"{type(error).__name__}: {error}",
    )
