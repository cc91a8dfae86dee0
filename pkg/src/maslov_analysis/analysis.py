"""Main analysis interface: closed forms with the definitional oracle as a cross-check."""

import time
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional, Sequence, Union

from .config import DEFAULT_TOLERANCES, Tolerances
from .conjugate import conjugate_instants, count_formula, no_accumulation_margin
from .conley_zehnder import cz_index, nontransversal_instants
from .errors import ConsistencyError
from .forms import inertia
from .jordan import decompose, validate
from .linalg import numerical_rank
from .liegroup.geodesic import geodesic_report
from .liegroup.models import GeodesicReport, LieAlgebraSpec
from .maslov import maslov_index
from .models import (
    ConjugateInstant,
    GSymmetricSystem,
    SpectralReport,
    SymplecticCoefficient,
    SymplecticReport,
)
from .oracle import (
    cz_definitional,
    detect_conjugate,
    maslov_definitional,
    symplectic_conjugate,
    symplectic_maslov,
)
from .oracle.models import Crossing
from .problem import SECOND_ORDER, SYMPLECTIC, ProblemFile
from .signatures import signatures_by_eigenvalue
from .symplectic import (
    DEGENERATE_CONTINUUM,
    REDUCIBLE,
    classify,
    reduce,
    second_order_form,
    validate_coefficient,
)

# instant locations must match the oracle within this fraction of T
INSTANT_TOLERANCE = 1e-8


def instants_agree(
    instants: Sequence[ConjugateInstant], crossings: Sequence[Crossing], T: float
) -> bool:
    """Same instants (within INSTANT_TOLERANCE * T) with multiplicity equal to rank deficiency."""
    if len(instants) != len(crossings):
        return False
    return all(
        abs(i.t - c.t) <= INSTANT_TOLERANCE * T and i.multiplicity == c.deficiency
        for i, c in zip(instants, crossings)
    )


class SpectralAnalyzer:
    """Main class for the spectral analysis of constant symplectic systems."""

    def __init__(
        self,
        tolerances: Optional[Tolerances] = None,
        run_oracle: bool = True,
        verbose: bool = False,
        record_timing: bool = False,
    ):
        """Initialize the analyzer.

        Args:
            tolerances: Numerical tolerances (defaults to DEFAULT_TOLERANCES)
            run_oracle: Whether to cross-check every closed form with the
                definitional oracle
            verbose: Print one line per stage
            record_timing: Attach per-stage wall clock seconds to reports
        """
        self.tolerances = tolerances or DEFAULT_TOLERANCES
        self.run_oracle = run_oracle
        self.verbose = verbose
        self.record_timing = record_timing

    def _log(self, message: str) -> None:
        if self.verbose:
            print(f"  {message}")

    @contextmanager
    def _stage(self, timing: Dict[str, float], name: str) -> Iterator[None]:
        start = time.perf_counter()
        yield
        if self.record_timing:
            timing[name] = time.perf_counter() - start

    def analyze(
        self,
        system: GSymmetricSystem,
        calculate_maslov: bool = True,
        calculate_cz: bool = True,
    ) -> SpectralReport:
        """Run the full pipeline on a second order system.

        Args:
            system: The system (g, A, T)
            calculate_maslov: Whether to compute the Maslov index
            calculate_cz: Whether to compute the Conley-Zehnder index

        Returns:
            SpectralReport; with the oracle on it carries agreement flags
            ``instants_agree``, ``count_agree``, ``maslov_agree`` and ``cz_agree``

        Raises:
            ValidationError: If the system violates a precondition
            NumericError: If a decomposition or cross-check fails numerically
        """
        tol = self.tolerances
        timing: Dict[str, float] = {}
        validate(system, tol)

        with self._stage(timing, "jordan"):
            decomposition = decompose(system, tol)
            signatures = signatures_by_eigenvalue(decomposition.real_blocks)
        self._log(
            f"[jordan] {len(decomposition.real_eigenvalues)} real eigenvalues, "
            f"{len(decomposition.real_blocks)} blocks"
        )

        with self._stage(timing, "conjugate"):
            instants = conjugate_instants(system, decomposition.spectrum, tol)
            count = count_formula(decomposition.spectrum, system.T, tol)
        if count != sum(i.multiplicity for i in instants):
            raise ConsistencyError(
                "count_formula",
                f"count formula gives {count} but instant multiplicities sum to "
                f"{sum(i.multiplicity for i in instants)}",
            )
        self._log(f"[conjugate] {len(instants)} instants, total multiplicity {count}")

        report = SpectralReport(
            system=system,
            decomposition=decomposition,
            signatures=signatures,
            instants=instants,
            count=count,
            riemannian=inertia(system.g, tol.tol_inertia).n_minus == 0,
            no_accumulation_margin=no_accumulation_margin(instants, decomposition.spectrum),
        )

        if calculate_maslov:
            with self._stage(timing, "maslov"):
                report.maslov = maslov_index(system, decomposition, instants, tol)
            self._log(f"[maslov] mu={report.maslov.total}")
        if calculate_cz:
            with self._stage(timing, "conley_zehnder"):
                report.nontransversal = nontransversal_instants(decomposition.spectrum, system.T, tol)
                report.cz = cz_index(system, decomposition, tol)
            self._log(f"[cz] i_cz={report.cz.total}")

        if self.run_oracle:
            with self._stage(timing, "oracle"):
                self._cross_check(report)
        report.timing = timing
        return report

    def _cross_check(self, report: SpectralReport) -> None:
        tol = self.tolerances
        system = report.system
        crossings = detect_conjugate(system, tol)
        oracle: Dict[str, object] = {"crossings": [c.to_dict() for c in crossings]}
        agreement = {
            "instants_agree": instants_agree(report.instants, crossings, system.T),
            "count_agree": report.count == sum(c.deficiency for c in crossings),
        }
        if report.maslov is not None:
            oracle["maslov"] = maslov_definitional(system, tol, crossings=crossings)
            agreement["maslov_agree"] = oracle["maslov"] == report.maslov.total
        if report.cz is not None:
            oracle["cz"] = cz_definitional(system, tol)
            agreement["cz_agree"] = oracle["cz"] == report.cz.total
        report.oracle = oracle
        report.agreement = agreement
        self._log(
            f"[oracle] {len(crossings)} crossings, maslov={oracle.get('maslov')}, "
            f"cz={oracle.get('cz')}, agree={all(agreement.values())}"
        )

    def analyze_coefficient(self, coefficient: SymplecticCoefficient, T: float) -> SymplecticReport:
        """Classify z' = X z and analyze it.

        A reducible coefficient is analyzed through its second order
        reduction; the oracle then also runs on exp(tX) itself to check the
        reduction. An unsupported coefficient gets the oracle only.

        Raises:
            ClassificationError: If every instant is conjugate
        """
        tol = self.tolerances
        timing: Dict[str, float] = {}
        validate_coefficient(coefficient, tol)
        kind = classify(coefficient, tol)
        self._log(f"[symplectic] {kind}")
        report = SymplecticReport(classification=kind, coefficient=coefficient, T=float(T))
        if numerical_rank(coefficient.block_b, tol.tol_rank) == coefficient.dim:
            damping, stiffness = second_order_form(coefficient, tol)
            report.second_order = {"damping": damping.tolist(), "stiffness": stiffness.tolist()}

        if kind == REDUCIBLE:
            report.reduced = self.analyze(reduce(coefficient, T, tol))
        elif kind == DEGENERATE_CONTINUUM:
            # raises ClassificationError
            reduce(coefficient, T, tol)

        if self.run_oracle or report.reduced is None:
            with self._stage(timing, "oracle"):
                crossings = symplectic_conjugate(coefficient, T, tol)
                maslov = symplectic_maslov(coefficient, T, tol, crossings=crossings)
            report.oracle = {"crossings": [c.to_dict() for c in crossings], "maslov": maslov}
            if report.reduced is not None:
                report.agreement = {
                    "reduction_instants_agree": instants_agree(report.reduced.instants, crossings, T),
                    "reduction_maslov_agree": report.reduced.maslov is not None
                    and maslov == report.reduced.maslov.total,
                }
            else:
                report.agreement = {}
            self._log(f"[oracle] exp(tX): {len(crossings)} crossings, maslov={maslov}")
        report.timing = timing
        return report

    def analyze_geodesic(
        self, spec: LieAlgebraSpec, direction: Sequence[float], T: float
    ) -> GeodesicReport:
        """Conjugate points along exp(tX), cross-checked on the Jacobi system."""
        tol = self.tolerances
        timing: Dict[str, float] = {}
        with self._stage(timing, "geodesic"):
            report = geodesic_report(spec, direction, T, tol)
        self._log(
            f"[liegroup] {len(report.instants)} instants, identities_hold={report.identities_hold}"
        )
        if self.run_oracle:
            with self._stage(timing, "oracle"):
                crossings = detect_conjugate(report.system, tol)
                maslov = maslov_definitional(report.system, tol, crossings=crossings)
            instants: List[ConjugateInstant] = [c.instant for c in report.maslov.per_instant]
            report.oracle = {"crossings": [c.to_dict() for c in crossings], "maslov": maslov}
            report.agreement = {
                "instants_agree": instants_agree(instants, crossings, T),
                "maslov_agree": maslov == report.maslov.total,
            }
            self._log(f"[oracle] maslov={maslov}, agree={report.all_agree}")
        report.timing = timing
        return report


Report = Union[SpectralReport, SymplecticReport, GeodesicReport]


def analyze_problem(
    problem: ProblemFile,
    overrides: Optional[Dict[str, Any]] = None,
    run_oracle: bool = True,
    verbose: bool = False,
    record_timing: bool = False,
) -> Report:
    """Run the pipeline matching the problem's kind.

    Tolerances are resolved as defaults, then the file's options, then
    MASLOV_TOL_OVERRIDE, then ``overrides``. The oracle runs only when both
    ``run_oracle`` and the file's ``oracle`` option allow it.
    """
    tolerances = Tolerances.from_env(problem.tolerances()).with_overrides(**(overrides or {}))
    analyzer = SpectralAnalyzer(
        tolerances,
        run_oracle=run_oracle and problem.run_oracle,
        verbose=verbose,
        record_timing=record_timing,
    )
    if problem.kind == SECOND_ORDER:
        return analyzer.analyze(problem.second_order_system(tolerances))
    if problem.kind == SYMPLECTIC:
        return analyzer.analyze_coefficient(problem.coefficient(), problem.horizon)
    spec, direction = problem.lie_algebra()
    return analyzer.analyze_geodesic(spec, direction, problem.horizon)
