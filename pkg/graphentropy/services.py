import logging
import math
import traceback
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from .conf import get_setting
from .entropy import (
    closed_form_entropy,
    cycle_asymptotic_offset,
    energies,
    ensemble_average_curve,
    entropy_curve,
    er_phase_transition_thresholds,
    finite_spectrum_entropy_lower_bound,
    gibbs_entropy,
    log_spectrum_classification,
    transition_tau,
)
from .exceptions import (
    DomainError,
    GenerationError,
    GraphEntropyError,
    NumericError,
    ResourceError,
)
from .generators import er_threshold_p, format_generator_spec, generate, matched_er_spec
from .graph import degrees, to_edge_list_text
from .matrices import check_kind_preconditions, graph_matrix
from .rng import Xorshift64Star, derive_seed
from .schemas import (
    CheckEntry,
    CheckReport,
    ClosedFormFamily,
    CommandResult,
    EntropyCurve,
    ErdosRenyiSpec,
    ExitCode,
    MatrixKind,
    Regime,
    Spectrum,
    SweepConfig,
    TauGrid,
)
from .spectral import eigenvalues_sym
from .utils import load_graph, preprocessing, resolve_source

logger = logging.getLogger(__name__)

CLOSED_FORM_TOLERANCE = 1e-8
ASYMPTOTIC_TOLERANCE = 1e-3
ASYMPTOTIC_CYCLE_ORDER = 4096
ORACLE_SIZES = (1, 2, 3, 5, 8, 16, 64, 256, 1024, 4096)
MONOTONE_SLACK = 1e-9


def exit_code_for(exception: Exception) -> ExitCode:
    if isinstance(exception, (NumericError, ResourceError)):
        return ExitCode.NUMERIC_FAILURE
    if isinstance(exception, (DomainError, GenerationError, ValidationError)):
        return ExitCode.USAGE_ERROR
    return ExitCode.NUMERIC_FAILURE


def one_line_message(exception: Exception) -> str:
    if isinstance(exception, ValidationError):
        error = exception.errors()[0]
        where = '.'.join(str(part) for part in error['loc'])
        return f"{where}: {error['msg']}" if where else error['msg']
    return str(exception).splitlines()[0] if str(exception) else type(exception).__name__


def create_error_result(exception: Exception, operation: str) -> CommandResult:
    """Failure DTO with a one-line diagnostic; the traceback goes to the debug log"""
    logger.debug("Error during %s:\n%s", operation, traceback.format_exc())
    return CommandResult(
        data=None,
        exit_code=exit_code_for(exception),
        success=False,
        message=f"{operation}: {one_line_message(exception)}",
    )


class SpectrumService:
    @staticmethod
    def compute(
        source: str,
        kind: MatrixKind,
        seed: int = 0,
        lcc: bool = False,
        fraction: Optional[float] = None,
    ) -> CommandResult[Spectrum]:
        try:
            kind = MatrixKind(kind)
            g = load_graph(resolve_source(source), seed)
            prepare = preprocessing(lcc, fraction)
            if prepare is not None:
                g = prepare(g)
            spectrum = eigenvalues_sym(graph_matrix(g, kind))
            return CommandResult[Spectrum](
                data=spectrum,
                message=f"{len(spectrum)} {kind.value} eigenvalues",
            )
        except (GraphEntropyError, ValidationError) as e:
            return create_error_result(e, 'spectrum')


class SweepService:
    HEADER = ('tau', 'entropy', 'entropy_over_logn', 'n', 'kind', 'ensemble_size')

    @staticmethod
    def build_config(options: Dict[str, Any]) -> SweepConfig:
        return SweepConfig(
            source=options['source'],
            kind=options['kind'],
            tau_min=options.get('tau_min'),
            tau_max=options.get('tau_max'),
            tau_points=options.get('tau_points'),
            tau_log=options.get('tau_log'),
            samples=options.get('samples', get_setting('SWEEP_SAMPLES')),
            seed=options.get('seed', get_setting('SWEEP_SEED')),
            lcc=options.get('lcc', False),
            fraction=options.get('fraction'),
            matched_er=options.get('matched_er', False),
        )

    @staticmethod
    def run(options: Dict[str, Any], workers: Optional[int] = None) -> CommandResult[EntropyCurve]:
        try:
            config = SweepService.build_config(options)
            grid = config.grid()
            source = resolve_source(config.source)
            prepare = preprocessing(config.lcc, config.fraction)

            if config.matched_er:
                g = load_graph(source, config.seed)
                if prepare is not None:
                    g = prepare(g)
                replica = matched_er_spec(g)
                logger.info("Matched ER replicas: %s", format_generator_spec(replica))
                curve = ensemble_average_curve(
                    replica, config.kind, grid, config.samples, config.seed, workers=workers
                )
            elif not isinstance(source, Path):
                curve = ensemble_average_curve(
                    source, config.kind, grid, config.samples, config.seed, prepare, workers
                )
            else:
                g = load_graph(source)
                if prepare is not None:
                    g = prepare(g)
                check_kind_preconditions(g, config.kind)
                curve = entropy_curve(g, config.kind, grid)

            crossing = transition_tau(curve)
            if crossing is None:
                logger.info("Normalized entropy stays above 1/2 on the grid")
            else:
                logger.info("Normalized entropy crosses 1/2 at tau=%.6g", crossing)
            return CommandResult[EntropyCurve](
                data=curve,
                message=f"{len(curve.samples)} tau points, n={curve.n}, ensemble_size={curve.ensemble_size}",
            )
        except (GraphEntropyError, ValidationError) as e:
            return create_error_result(e, 'sweep')

    @staticmethod
    def rows(curve: EntropyCurve) -> List[Tuple[object, ...]]:
        return [
            (s.tau, s.entropy, s.normalized_entropy, curve.n, curve.kind.value, curve.ensemble_size)
            for s in curve.samples
        ]


class GenerateService:
    @staticmethod
    def draw(source: str, seed: int = 0) -> CommandResult[str]:
        try:
            spec = resolve_source(source)
            if isinstance(spec, Path):
                raise DomainError(f"'{source}' is not a generator spec")
            g = generate(spec, seed)
            text = to_edge_list_text(
                g, comments=(f"generator: {format_generator_spec(spec)}", f"seed: {seed}")
            )
            return CommandResult[str](data=text, message=f"n={g.n} m={g.num_edges}")
        except (GraphEntropyError, ValidationError) as e:
            return create_error_result(e, 'generate')


# Oracle cross-checks

def _oracle_cases(n: int) -> List[Tuple[str, ClosedFormFamily, int, Optional[int]]]:
    """(label, closed form, n1, n2) pairs realisable with exactly n vertices"""
    F = ClosedFormFamily
    cases = [
        (f"complete:n={n}", F.COMPLETE_ADJ, n, None),
        (f"complete:n={n}", F.COMPLETE_L, n, None),
        (f"empty:n={n}", F.EMPTY_ADJ, n, None),
        (f"empty:n={n}", F.EMPTY_L, n, None),
    ]
    if n >= 2:
        cases += [
            (f"complete:n={n}", F.COMPLETE_NL, n, None),
            (f"star:n1={n - 1}", F.STAR_ADJ, n - 1, None),
            (f"star:n1={n - 1}", F.STAR_L, n - 1, None),
            (f"star:n1={n - 1}", F.STAR_NL, n - 1, None),
        ]
    if n >= 2 and n % 2 == 0:
        half = n // 2
        cases += [
            (f"bipartite:n1={half},n2={half}", F.BIPARTITE_ADJ, half, half),
            (f"bipartite:n1={half},n2={half}", F.BIPARTITE_EQUAL_L, half, None),
            (f"bipartite:n1={half},n2={half}", F.BIPARTITE_EQUAL_NL, half, None),
        ]
    if n >= 4:
        n1 = n // 4
        cases += [
            (f"bipartite:n1={n1},n2={n - n1}", F.BIPARTITE_ADJ, n1, n - n1),
            (f"bipartite:n1={n1},n2={n - n1}", F.BIPARTITE_L, n1, n - n1),
        ]
    if n >= 3:
        cases += [
            (f"cycle:n={n}", F.CYCLE_ADJ, n, None),
            (f"cycle:n={n}", F.CYCLE_L, n, None),
            (f"cycle:n={n}", F.CYCLE_NL, n, None),
        ]
    return cases


_CLASS_MINIMUM_ORDER = {'star': 2, 'bipartite': 2, 'cycle': 3}


class OracleCheckService:
    @staticmethod
    def run(max_n: Optional[int] = None, taus: Optional[Sequence[float]] = None) -> CommandResult[CheckReport]:
        try:
            max_n = get_setting('ORACLE_MAX_N') if max_n is None else max_n
            taus = tuple(get_setting('ORACLE_TAUS') if taus is None else taus)
            if max_n < 1:
                raise DomainError(f"max_n must be at least 1, got {max_n}")
            if not taus:
                raise DomainError("At least one tau is needed")
            for tau in taus:
                if not (tau >= 0 and math.isfinite(tau)):
                    raise DomainError(f"tau must be finite and non-negative, got {tau}")

            report = CheckReport()
            sizes = [n for n in ORACLE_SIZES if n <= min(max_n, get_setting('DENSE_EIGEN_CAP'))]
            for name, minimum in _CLASS_MINIMUM_ORDER.items():
                if max_n < minimum:
                    report.skipped.append(f"{name}: needs n >= {minimum}, max_n={max_n}")

            spectra: Dict[Tuple[str, MatrixKind], Spectrum] = {}
            for n in sizes:
                for label, family, n1, n2 in _oracle_cases(n):
                    kind = family.kind
                    key = (label, kind)
                    if key not in spectra:
                        g = load_graph(resolve_source(label))
                        spectra[key] = eigenvalues_sym(graph_matrix(g, kind))
                    for tau in taus:
                        numeric = gibbs_entropy(spectra[key], tau, kind).entropy
                        exact = closed_form_entropy(family, tau, n1, n2)
                        report.entries.append(CheckEntry(
                            case=f"{label} {family.value}", kind=kind, n=n, tau=tau,
                            discrepancy=abs(numeric - exact), tolerance=CLOSED_FORM_TOLERANCE,
                        ))

            n = ASYMPTOTIC_CYCLE_ORDER
            for family in (ClosedFormFamily.CYCLE_ADJ, ClosedFormFamily.CYCLE_L, ClosedFormFamily.CYCLE_NL):
                for tau in taus:
                    exact = closed_form_entropy(family, tau, n)
                    asymptote = math.log(n) + cycle_asymptotic_offset(family.kind, tau)
                    report.entries.append(CheckEntry(
                        case=f"cycle:n={n} {family.value} asymptote", kind=family.kind, n=n, tau=tau,
                        discrepancy=abs(exact - asymptote), tolerance=ASYMPTOTIC_TOLERANCE,
                    ))

            breaches = [e for e in report.entries if not e.passed]
            report.violations.extend(
                f"{e.case} tau={e.tau:g}: |difference|={e.discrepancy:.3e} > {e.tolerance:g}"
                for e in breaches
            )
            message = f"{len(report.entries)} checks, max discrepancy {report.max_discrepancy:.3e}"
            if breaches:
                return CommandResult[CheckReport](
                    data=report, exit_code=ExitCode.PROPERTY_VIOLATION, success=False,
                    message=f"oracle_check: {len(breaches)} of {message}",
                )
            return CommandResult[CheckReport](data=report, message=message)
        except (GraphEntropyError, ValidationError) as e:
            return create_error_result(e, 'oracle_check')


# Property checks on random graphs and synthetic spectra

def is_non_increasing(values: Iterable[float], slack: float = MONOTONE_SLACK) -> bool:
    values = list(values)
    return all(b <= a + slack for a, b in zip(values, values[1:]))


def synthetic_log_spectrum(n: int, a: float, b: float) -> Spectrum:
    """{0} plus n-1 eigenvalues evenly spread over [a log n, b log n]"""
    log_n = math.log(n)
    return Spectrum(values=np.concatenate(([0.0], np.linspace(a * log_n, b * log_n, n - 1))))


class BoundsCheckService:
    GRID = TauGrid.build(1e-2, 1e2, 9)
    SYNTHETIC_ORDERS = tuple(2 ** k for k in range(8, 15))
    THRESHOLD_P0 = (2.0, 10.5, 21.0, 42.0)
    BRACKET_ORDER = 400
    BRACKET_P0 = 10.5
    BRACKET_SEEDS = 2

    @staticmethod
    def _random_graph_checks(report: CheckReport, samples: int, seed: int) -> None:
        grid = BoundsCheckService.GRID
        for index in range(samples):
            member_seed = derive_seed(seed, index)
            rng = Xorshift64Star(member_seed)
            spec = ErdosRenyiSpec(n=8 + rng.below(57), p=0.05 + 0.45 * rng.random())
            g = generate(spec, member_seed)
            label = f"{format_generator_spec(spec)} seed={member_seed}"
            for kind in MatrixKind:
                if kind is MatrixKind.NORMALIZED_LAPLACIAN and degrees(g).min() == 0:
                    continue
                spectrum = eigenvalues_sym(graph_matrix(g, kind))
                c1 = float(energies(spectrum, kind).max())
                curve = [gibbs_entropy(spectrum, tau, kind).entropy for tau in grid.points]
                for tau, entropy in zip(grid.points, curve):
                    bound = finite_spectrum_entropy_lower_bound(c1, 0.0, tau, g.n)
                    report.entries.append(CheckEntry(
                        case=f"lower bound {label}", kind=kind, n=g.n, tau=tau,
                        discrepancy=max(0.0, bound - entropy), tolerance=MONOTONE_SLACK,
                    ))
                if gibbs_entropy(spectrum, 0.0, kind).entropy != math.log(g.n):
                    report.violations.append(f"S(0) != log n for {label} {kind.value}")
                if not is_non_increasing(curve):
                    report.violations.append(f"entropy increases with tau for {label} {kind.value}")

    @staticmethod
    def _synthetic_spectrum_checks(report: CheckReport) -> None:
        kind = MatrixKind.LAPLACIAN
        a, b = 1.0, 2.0
        largest = max(BoundsCheckService.SYNTHETIC_ORDERS)
        for n in BoundsCheckService.SYNTHETIC_ORDERS:
            log_n = math.log(n)
            spectrum = synthetic_log_spectrum(n, a, b)
            label = f"synthetic n={n} a={a:g} b={b:g}"

            tau = 0.5 / b
            high = log_spectrum_classification(a, b, tau)
            entropy = gibbs_entropy(spectrum, tau, kind).entropy
            if high.regime is not Regime.HIGH_ENTROPY:
                report.violations.append(f"{label}: tau={tau:g} classified {high.regime.value}")
            else:
                slack = math.log(n / (n - 1))
                if entropy < high.coefficient * log_n - slack:
                    report.violations.append(
                        f"{label}: S={entropy:.6g} below {high.coefficient:g} log n at tau={tau:g}"
                    )

            tau = 1.0 / b
            if log_spectrum_classification(a, b, tau).regime is not Regime.BOUNDARY:
                report.violations.append(f"{label}: tau=1/b not classified as boundary")
            elif gibbs_entropy(spectrum, tau, kind).entropy < math.log(2.0):
                report.violations.append(f"{label}: S below log 2 at tau=1/b")

            tau = 2.0 / a
            if log_spectrum_classification(a, b, tau).regime is not Regime.VANISHING_ENTROPY:
                report.violations.append(f"{label}: tau=2/a not classified as vanishing")
            elif n == largest and gibbs_entropy(spectrum, tau, kind).entropy > 0.01:
                report.violations.append(f"{label}: S above 0.01 at tau=2/a")

        n = largest
        log_n = math.log(n)
        noise = np.linspace(-1.0, 1.0, n - 1) / n
        converging = Spectrum(values=np.concatenate(([0.0], 1.0 + noise)))
        if log_n - gibbs_entropy(converging, 1.0, kind).entropy > 0.01:
            report.violations.append(f"bounded spectrum n={n}: log n - S above 0.01 at tau=1")
        gap = log_n * math.log(log_n)
        spread = Spectrum(values=np.concatenate(([0.0], np.linspace(gap, 2.0 * gap, n - 1))))
        if gibbs_entropy(spread, 1.0, kind).entropy > 0.01:
            report.violations.append(f"spectral gap (log n)(log log n) n={n}: S above 0.01 at tau=1")

    @staticmethod
    def _threshold_checks(report: CheckReport, seed: int) -> None:
        thresholds = [er_phase_transition_thresholds(p0) for p0 in BoundsCheckService.THRESHOLD_P0]
        for (p0, (low, high)) in zip(BoundsCheckService.THRESHOLD_P0, thresholds):
            if not 0 < low < high:
                report.violations.append(f"p0={p0:g}: thresholds ({low:.6g}, {high:.6g}) out of order")
        for first, second in zip(thresholds, thresholds[1:]):
            if not (second[0] < first[0] and second[1] < first[1]):
                report.violations.append("ER thresholds are not decreasing in p0")

        n, p0 = BoundsCheckService.BRACKET_ORDER, BoundsCheckService.BRACKET_P0
        low, high = er_phase_transition_thresholds(p0)
        spec = ErdosRenyiSpec(n=n, p=er_threshold_p(n, p0))
        grid = TauGrid(points=(low / 2.0, 2.0 * high))
        curve = ensemble_average_curve(
            spec, MatrixKind.LAPLACIAN, grid, BoundsCheckService.BRACKET_SEEDS, seed
        )
        label = f"{format_generator_spec(spec)} seeds {seed}..{seed + BoundsCheckService.BRACKET_SEEDS - 1}"
        start, end = curve.samples
        if start.normalized_entropy < 0.5:
            report.violations.append(
                f"{label}: S/log n={start.normalized_entropy:.4f} < 0.5 at tau_low/2={start.tau:.6g}"
            )
        if end.normalized_entropy > 0.05:
            report.violations.append(
                f"{label}: S/log n={end.normalized_entropy:.4f} > 0.05 at 2 tau_high={end.tau:.6g}"
            )

    @staticmethod
    def run(samples: Optional[int] = None, seed: Optional[int] = None) -> CommandResult[CheckReport]:
        samples = get_setting('BOUNDS_SAMPLES') if samples is None else samples
        seed = get_setting('BOUNDS_SEED') if seed is None else seed
        if samples < 1:
            return CommandResult[CheckReport](
                exit_code=ExitCode.USAGE_ERROR, success=False,
                message=f"bounds_check: samples must be at least 1, got {samples}",
            )
        try:
            report = CheckReport()
            BoundsCheckService._random_graph_checks(report, samples, seed)
            BoundsCheckService._synthetic_spectrum_checks(report)
            BoundsCheckService._threshold_checks(report, seed)

            breaches = [e for e in report.entries if not e.passed]
            report.violations.extend(
                f"{e.case} {e.kind.value} tau={e.tau:g}: S below bound by {e.discrepancy:.3e}"
                for e in breaches
            )
            message = f"{len(report.entries)} bound checks on {samples} random graphs"
            if report.violations:
                return CommandResult[CheckReport](
                    data=report, exit_code=ExitCode.PROPERTY_VIOLATION, success=False,
                    message=f"bounds_check: {len(report.violations)} violation(s); first: {report.violations[0]}",
                )
            return CommandResult[CheckReport](data=report, message=message)
        except (GraphEntropyError, ValidationError) as e:
            return create_error_result(e, 'bounds_check')
