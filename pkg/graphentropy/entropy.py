"""
Von Neumann entropy of graph Gibbs states.

For a spectrum {lambda_i} of H (H = -A for the adjacency kind) the Gibbs
weights are exp(-tau * mu_i) / Z with mu_i = lambda_i - min(lambda); the
shift leaves the entropy unchanged and keeps every exponent <= 0. All
log_partition / trace_term values reported here are post-shift.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .conf import get_setting
from .exceptions import DomainError, GenerationError, NumericError
from .generators import generate
from .matrices import check_kind_preconditions, graph_matrix
from .rng import derive_seed
from .schemas import (
    ClosedFormFamily,
    CurveSample,
    EntropyCurve,
    GeneratorSpec,
    GibbsEntropyResult,
    Graph,
    MatrixKind,
    Regime,
    Spectrum,
    SpectrumClassification,
    TauGrid,
)
from .spectral import bessel_ratio, eigenvalues_sym, lambert_w, log_bessel_i

logger = logging.getLogger(__name__)

# exp(-x) underflows to zero in double precision beyond this
UNDERFLOW_CUTOFF = 745.0


def _check_tau(tau: float) -> None:
    if not (tau >= 0 and math.isfinite(tau)):
        raise DomainError(f"tau must be finite and non-negative, got {tau}")


def energies(spectrum: Spectrum, kind: MatrixKind) -> np.ndarray:
    """Spectrum of H (negated for adjacency) shifted so its minimum is 0"""
    values = spectrum.values
    if values.size == 0:
        raise DomainError("Spectrum is empty")
    if not np.all(np.isfinite(values)):
        raise NumericError("Spectrum contains non-finite eigenvalues")
    if MatrixKind(kind) is MatrixKind.ADJACENCY:
        values = -values
    return values - values.min()


def _gibbs_weights(mu: np.ndarray, tau: float) -> Tuple[np.ndarray, np.ndarray]:
    exponents = tau * mu
    weights = np.where(exponents > UNDERFLOW_CUTOFF, 0.0, np.exp(-np.minimum(exponents, UNDERFLOW_CUTOFF)))
    return exponents, weights


def gibbs_entropy(spectrum: Spectrum, tau: float, kind: MatrixKind) -> GibbsEntropyResult:
    """S = tau * Tr(H rho) + log Z"""
    _check_tau(tau)
    mu = energies(spectrum, kind)
    n = mu.shape[0]
    if tau == 0:
        log_n = math.log(n)
        return GibbsEntropyResult(tau=0.0, entropy=log_n, log_partition=log_n, trace_term=0.0)

    exponents, weights = _gibbs_weights(mu, tau)
    # the shifted minimum contributes exp(0) = 1, so z >= 1
    z = float(weights.sum())
    trace_term = float(np.dot(exponents, weights) / z)
    log_partition = math.log(z)
    return GibbsEntropyResult(
        tau=tau,
        entropy=trace_term + log_partition,
        log_partition=log_partition,
        trace_term=trace_term,
    )


def shannon_entropy_of_gibbs_weights(spectrum: Spectrum, tau: float, kind: MatrixKind) -> float:
    """-sum p log p over the Gibbs weights, 0 log 0 = 0"""
    _check_tau(tau)
    mu = energies(spectrum, kind)
    if tau == 0:
        return math.log(mu.shape[0])
    _, weights = _gibbs_weights(mu, tau)
    p = weights / weights.sum()
    p = p[p > 0]
    return float(-np.dot(p, np.log(p)))


# Curves

def _normalize(entropy: float, n: int) -> float:
    return entropy / math.log(n) if n >= 2 else entropy


def entropy_curve_from_spectrum(
    spectrum: Spectrum,
    kind: MatrixKind,
    grid: TauGrid,
    n: Optional[int] = None,
) -> EntropyCurve:
    n = len(spectrum) if n is None else n
    samples = []
    for tau in grid.points:
        entropy = gibbs_entropy(spectrum, tau, kind).entropy
        samples.append(CurveSample(tau=tau, entropy=entropy, normalized_entropy=_normalize(entropy, n)))
    return EntropyCurve(kind=kind, n=n, samples=samples, ensemble_size=1)


def entropy_curve(g: Graph, kind: MatrixKind, grid: TauGrid) -> EntropyCurve:
    """One eigendecomposition, then the entropy at every grid point"""
    if g.n == 0:
        raise DomainError("Entropy of the empty graph is undefined")
    spectrum = eigenvalues_sym(graph_matrix(g, kind))
    return entropy_curve_from_spectrum(spectrum, kind, grid, g.n)


def _draw_ensemble(
    spec: GeneratorSpec,
    kind: MatrixKind,
    samples: int,
    seed: int,
    preprocess: Optional[Callable[[Graph], Graph]],
) -> List[Graph]:
    max_draws = get_setting('MAX_DRAWS_FACTOR') * samples
    accepted: List[Graph] = []
    draws = 0
    while len(accepted) < samples:
        if draws >= max_draws:
            raise GenerationError(
                f"Only {len(accepted)} of {samples} graphs satisfied the {kind.value} "
                f"preconditions after {max_draws} draws"
            )
        g = generate(spec, derive_seed(seed, draws))
        draws += 1
        if preprocess is not None:
            g = preprocess(g)
        try:
            if g.n == 0:
                raise DomainError("empty graph")
            check_kind_preconditions(g, kind)
        except DomainError as e:
            logger.debug("Rejected draw %d (seed %d): %s", draws - 1, derive_seed(seed, draws - 1), e)
            continue
        accepted.append(g)
    if draws > samples:
        logger.info("Drew %d graphs to accept %d", draws, samples)
    return accepted


def ensemble_average_curve(
    spec: GeneratorSpec,
    kind: MatrixKind,
    grid: TauGrid,
    samples: int,
    seed: int = 0,
    preprocess: Optional[Callable[[Graph], Graph]] = None,
    workers: Optional[int] = None,
) -> EntropyCurve:
    """
    Mean entropy curve over graphs drawn with seeds seed, seed+1, ...

    Draws whose graph cannot carry `kind` (isolated vertices for the
    normalized Laplacian) are rejected and redrawn. Curves are reduced in
    draw order, so the result does not depend on `workers`.
    """
    if samples < 1:
        raise DomainError(f"Ensemble needs samples >= 1, got {samples}")
    kind = MatrixKind(kind)
    draw_count = 1 if spec.deterministic else samples
    graphs = _draw_ensemble(spec, kind, draw_count, seed, preprocess)

    workers = workers or get_setting('ENSEMBLE_WORKERS')
    if workers > 1 and len(graphs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            curves = list(pool.map(lambda g: entropy_curve(g, kind, grid), graphs))
    else:
        curves = [entropy_curve(g, kind, grid) for g in graphs]

    entropies = np.array([curve.entropies() for curve in curves])
    normalized = np.array([curve.normalized() for curve in curves])
    mean_entropy = entropies.mean(axis=0)
    mean_normalized = normalized.mean(axis=0)
    orders = [g.n for g in graphs]
    n = int(round(sum(orders) / len(orders)))
    logger.info(
        "Ensemble %s (%s): %d graph(s), mean order %d, %d tau points",
        spec.family, kind.value, len(graphs), n, len(grid),
    )
    return EntropyCurve(
        kind=kind,
        n=n,
        samples=[
            CurveSample(tau=tau, entropy=float(s), normalized_entropy=float(r))
            for tau, s, r in zip(grid.points, mean_entropy, mean_normalized)
        ],
        ensemble_size=samples,
    )


def transition_tau(curve: EntropyCurve, level: float = 0.5) -> Optional[float]:
    """First tau where the normalized entropy falls to `level`, log-interpolated"""
    taus = curve.taus()
    values = curve.normalized()
    below = np.flatnonzero(values <= level)
    if below.size == 0:
        return None
    i = int(below[0])
    if i == 0:
        return float(taus[0])
    t0, t1 = taus[i - 1], taus[i]
    y0, y1 = values[i - 1], values[i]
    fraction = (y0 - level) / (y0 - y1)
    if t0 <= 0:
        return float(t0 + fraction * (t1 - t0))
    return float(math.exp(math.log(t0) + fraction * (math.log(t1) - math.log(t0))))


# Closed forms

_NEEDS_TWO_PARTS = (ClosedFormFamily.BIPARTITE_ADJ, ClosedFormFamily.BIPARTITE_L)
_CYCLES = (ClosedFormFamily.CYCLE_ADJ, ClosedFormFamily.CYCLE_L, ClosedFormFamily.CYCLE_NL)


def analytic_spectrum(family: ClosedFormFamily, n1: int, n2: Optional[int] = None) -> List[Tuple[float, int]]:
    """
    Known spectrum of a graph class as (eigenvalue, multiplicity) pairs.

    n1 is the order for complete, empty and cycle families, the leaf count
    for stars and the part size for bipartite families.
    """
    family = ClosedFormFamily(family)
    minimum = 3 if family in _CYCLES else 1
    if n1 < minimum:
        raise DomainError(f"{family.value} needs n1 >= {minimum}, got {n1}")
    if family in _NEEDS_TWO_PARTS:
        if n2 is None or n2 < 1:
            raise DomainError(f"{family.value} needs n2 >= 1")
    elif n2 is not None:
        raise DomainError(f"{family.value} takes a single size parameter")

    F = ClosedFormFamily
    if family is F.COMPLETE_ADJ:
        levels = [(n1 - 1.0, 1), (-1.0, n1 - 1)]
    elif family is F.COMPLETE_L:
        levels = [(float(n1), n1 - 1), (0.0, 1)]
    elif family is F.COMPLETE_NL:
        if n1 < 2:
            raise DomainError("K_1 has an isolated vertex; its normalized Laplacian is undefined")
        levels = [(n1 / (n1 - 1.0), n1 - 1), (0.0, 1)]
    elif family in (F.BIPARTITE_ADJ, F.STAR_ADJ):
        n2 = 1 if family is F.STAR_ADJ else n2
        root = math.sqrt(n1 * n2)
        levels = [(root, 1), (0.0, n1 + n2 - 2), (-root, 1)]
    elif family in (F.BIPARTITE_L, F.BIPARTITE_EQUAL_L, F.STAR_L):
        if family is F.BIPARTITE_EQUAL_L:
            n2 = n1
        elif family is F.STAR_L:
            n2 = 1
        # part-one vertices have degree n2 and vice versa
        levels = [(float(n1 + n2), 1), (float(n2), n1 - 1), (float(n1), n2 - 1), (0.0, 1)]
    elif family in (F.BIPARTITE_EQUAL_NL, F.STAR_NL):
        order = 2 * n1 if family is F.BIPARTITE_EQUAL_NL else n1 + 1
        levels = [(2.0, 1), (1.0, order - 2), (0.0, 1)]
    elif family in (F.EMPTY_ADJ, F.EMPTY_L):
        levels = [(0.0, n1)]
    else:
        angles = 2.0 * np.pi * np.arange(n1) / n1
        if family is F.CYCLE_ADJ:
            values = 2.0 * np.cos(angles)
        elif family is F.CYCLE_L:
            values = 2.0 - 2.0 * np.cos(angles)
        else:
            values = 1.0 - np.cos(angles)
        levels = [(float(v), 1) for v in values]

    merged = {}
    for value, multiplicity in levels:
        if multiplicity > 0:
            merged[value] = merged.get(value, 0) + multiplicity
    return sorted(merged.items(), reverse=True)


def _entropy_of_levels(levels: Sequence[Tuple[float, int]], tau: float, kind: MatrixKind) -> float:
    values = np.array([value for value, _ in levels], dtype=np.float64)
    multiplicities = np.array([count for _, count in levels], dtype=np.float64)
    if tau == 0:
        return math.log(multiplicities.sum())
    if MatrixKind(kind) is MatrixKind.ADJACENCY:
        values = -values
    mu = values - values.min()
    exponents, weights = _gibbs_weights(mu, tau)
    weights = weights * multiplicities
    z = weights.sum()
    return float(np.dot(exponents, weights) / z + math.log(z))


def closed_form_entropy(family: ClosedFormFamily, tau: float, n1: int, n2: Optional[int] = None) -> float:
    """Entropy of a graph class from its known spectrum, no eigensolver involved"""
    _check_tau(tau)
    family = ClosedFormFamily(family)
    return _entropy_of_levels(analytic_spectrum(family, n1, n2), tau, family.kind)


def cycle_asymptotic_offset(kind: MatrixKind, tau: float) -> float:
    """
    c(tau) with S(C_n) = log n + c(tau) + o(1):
    -x I1(x)/I0(x) + log I0(x), x = 2 tau for A and L, x = tau for the
    normalized Laplacian.
    """
    _check_tau(tau)
    x = tau if MatrixKind(kind) is MatrixKind.NORMALIZED_LAPLACIAN else 2.0 * tau
    if x == 0:
        return 0.0
    return -x * bessel_ratio(x) + log_bessel_i(0, x)


# Bounds and thresholds

def finite_spectrum_entropy_lower_bound(c1: float, c2: float, tau: float, n: int) -> float:
    """Lower bound on S for a spectrum contained in [c2, c1]"""
    if c1 < c2:
        raise DomainError(f"Need c1 >= c2, got c1={c1}, c2={c2}")
    if not tau > 0:
        raise DomainError(f"tau must be positive, got {tau}")
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    inverse = 1.0 / tau
    if c1 <= inverse:
        deficit = tau * (c1 - c2)
    elif c2 <= inverse:
        deficit = tau * (c1 - min(c1 * math.exp(tau * (c2 - c1)), c2))
    else:
        deficit = tau * c1 * (1.0 - math.exp(tau * (c2 - c1)))
    return math.log(n) - deficit


def log_spectrum_classification(a: float, b: float, tau: float) -> SpectrumClassification:
    """
    Entropy regime for spectra with lambda_{n-1} = a log n and
    lambda_1 = b log n. Between 1/b and 1/a only partial bounds exist, so
    that window is reported as indeterminate.
    """
    if not 0 < a <= b:
        raise DomainError(f"Need 0 < a <= b, got a={a}, b={b}")
    if not tau > 0:
        raise DomainError(f"tau must be positive, got {tau}")
    if math.isclose(tau * b, 1.0, rel_tol=1e-12):
        return SpectrumClassification(regime=Regime.BOUNDARY)
    if tau < 1.0 / b:
        return SpectrumClassification(regime=Regime.HIGH_ENTROPY, coefficient=1.0 - tau * b)
    if tau > 1.0 / a:
        return SpectrumClassification(regime=Regime.VANISHING_ENTROPY)
    return SpectrumClassification(regime=Regime.INDETERMINATE)


def _er_lambert_argument(p0: float) -> float:
    if not p0 > 1:
        raise DomainError(f"p0 must exceed 1, got {p0}")
    return (1.0 - p0) / (math.e * p0)


def er_phase_transition_thresholds(p0: float) -> Tuple[float, float]:
    """(tau_low, tau_high) of the Laplacian entropy of ER graphs at p = p0 log n / n"""
    x = _er_lambert_argument(p0)
    return lambert_w(0, x) / (1.0 - p0), lambert_w(-1, x) / (1.0 - p0)


def er_laplacian_spectrum_coefficients(p0: float) -> Tuple[float, float]:
    """(a, b) with lambda_{n-1} ~ a log n and lambda_1 ~ b log n"""
    x = _er_lambert_argument(p0)
    return (1.0 - p0) / lambert_w(-1, x), (1.0 - p0) / lambert_w(0, x)


def spectral_component_count(spectrum: Spectrum, kind: MatrixKind) -> int:
    """Number of (near-)zero Laplacian eigenvalues"""
    if MatrixKind(kind) is MatrixKind.ADJACENCY:
        raise DomainError("Zero eigenvalues of the adjacency matrix do not count components")
    values = spectrum.values
    tolerance = get_setting('ZERO_TOL') * max(1.0, float(values[0]) if values.size else 1.0)
    return int(np.count_nonzero(np.abs(values) <= tolerance))
