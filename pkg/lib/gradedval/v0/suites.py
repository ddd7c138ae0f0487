# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Property suites run over the shipped fixtures and the user supplied entities."""
import itertools
import logging
import random
from collections import Counter
from contextlib import contextmanager
from typing import Callable, Dict, Iterator, List

from gradedval.v0.basevaluation import (
    base_containment,
    base_extensions,
    base_residue,
    residue_power_test,
)
from gradedval.v0.constants_gradedval import (
    DefaultPerturbedTables,
    DefaultPoolExponent,
    DefaultRandomExtensions,
    DefaultRandomGroups,
    DefaultSampleSeed,
    DefaultSampleSize,
)
from gradedval.v0.fixtures import (
    DOMINATION_CASES,
    ORBIT_CASES,
    UNIVERSES,
    random_extension,
    random_group,
    universe_elements,
)
from gradedval.v0.galois import (
    AutGroup,
    dominated_extension,
    fixed_subfield,
    inertia_pairing,
    is_free_action,
    orbit_on_extensions,
)
from gradedval.v0.gradedfield import FieldExtension, efn, multiply_index
from gradedval.v0.gradedval_exceptions import (
    MathematicalFailure,
    UnknownSuiteError,
    UnsupportedComparisonError,
    UnsupportedExtensionError,
)
from gradedval.v0.gradedvaluation import (
    extend_valuation,
    extension_membership_oracle,
    reconstructed_member,
    restrict_valuation,
    ring_containment,
    ring_member,
    same_ring,
    sample_homogeneous,
)
from gradedval.v0.grading import INFINITE, format_index
from gradedval.v0.helper_enums import CertificateRule, OracleMode, SuiteName, Verdict
from gradedval.v0.models import SuiteReport
from gradedval.v0.quotient import torsor_check
from gradedval.v0.workspace import Workspace
from gradedval.v0.zrspace import (
    MembershipTable,
    basic_member,
    nonvaluation_certificate,
    perturbed_table,
    stable_affine_neighborhood,
    trace_table,
)

# The unique library identifier, never change it
LIBID = "8a0c2e4f6b1d4a3c5e7f9b1d3a5c7e9f"

# Increment this major API version when introducing breaking changes
LIBAPI = 0

# Increment this PATCH version before publishing the library or reset
# to 0 if you are raising the major API version
LIBPATCH = 2


logger = logging.getLogger(__name__)


@contextmanager
def _check(report: SuiteReport, name: str, **inputs) -> Iterator[None]:
    """Record a failed check instead of aborting the suite on a mathematical failure."""
    try:
        yield
    except MathematicalFailure as e:
        logger.error(f"{report.suite}/{name} failed: {e}")
        report.add(name, False, expected="no error", actual=f"{type(e).__name__}: {e}", **inputs)


def _efn_checks(report: SuiteReport, name: str, ext: FieldExtension) -> None:
    with _check(report, "efn", extension=name):
        e, f, n = efn(ext)
        report.add(
            "n_equals_ef",
            n == multiply_index(e, f),
            expected=format_index(multiply_index(e, f)),
            actual=format_index(n),
            extension=name,
        )
        if n is not INFINITE:
            check = ext.basis_product_check()
            report.add(
                "basis_product", check["passed"], expected=True, actual=check, extension=name
            )


def efn_suite(ws: Workspace, rng: random.Random, pool_exponent: int) -> SuiteReport:
    """n = ef and the literal basis check on every extension, plus random ones."""
    report = SuiteReport(suite=SuiteName.EFN)
    for name, ext in sorted(ws.extensions.items()):
        _efn_checks(report, name, ext)
    for k in range(DefaultRandomExtensions):
        ext = random_extension(rng)
        _efn_checks(report, f"random[{k}]: {ext}", ext)
    return report


def _faithful_groups(ws: Workspace) -> Dict[str, AutGroup]:
    return {name: G for name, G in sorted(ws.groups.items()) if G.is_faithful()}


def _artin_checks(report: SuiteReport, name: str, G: AutGroup) -> None:
    with _check(report, "artin", group=name):
        fixed, ext = fixed_subfield(G)
        _, _, n = efn(ext)
        report.add(
            "degree_equals_order",
            n == G.order,
            expected=G.order,
            actual=format_index(n),
            group=name,
            fixed=str(fixed),
        )

        generators = [ext.embed(fixed.monomial(fixed.base.one(), b)) for b in fixed.gamma.basis]
        invariant = all(g.apply(x) == x for g in G.action for x in generators)
        report.add(
            "fixed_generators_invariant", invariant, expected=True, actual=invariant, group=name
        )


def artin_suite(ws: Workspace, rng: random.Random, pool_exponent: int) -> SuiteReport:
    """[K : K^G] = #G for faithful groups."""
    report = SuiteReport(suite=SuiteName.ARTIN)
    for name, G in _faithful_groups(ws).items():
        _artin_checks(report, name, G)
    for k in range(DefaultRandomGroups):
        G = random_group(rng)
        _artin_checks(report, f"random[{k}]: {G.parent}", G)
    return report


def pairing_suite(ws: Workspace, rng: random.Random, pool_exponent: int) -> SuiteReport:
    """#I = [Gamma : V] and the pairing is biadditive and nondegenerate."""
    report = SuiteReport(suite=SuiteName.PAIRING)
    for name, G in _faithful_groups(ws).items():
        with _check(report, "pairing", group=name):
            pairing = inertia_pairing(G)
            data = pairing.to_dict()
            report.add(
                "inertia_matches_index",
                pairing.inertia_matches_index,
                expected=pairing.inertia.order,
                actual=data["index"],
                group=name,
            )
            report.add(
                "biadditive",
                pairing.biadditive,
                expected=True,
                actual=pairing.biadditive,
                group=name,
            )
            nondegenerate = pairing.nondegenerate_left and pairing.nondegenerate_right
            report.add(
                "nondegenerate", nondegenerate, expected=True, actual=nondegenerate, group=name
            )
    return report


def _small_valuations(ws: Workspace, ext: FieldExtension):
    return [(name, R) for name, R in sorted(ws.valuations.items()) if R.parent == ext.small]


def extendv_suite(ws: Workspace, rng: random.Random, pool_exponent: int) -> SuiteReport:
    """Extensions of R correspond to extensions of v1, and both membership oracles agree."""
    report = SuiteReport(suite=SuiteName.EXTENDV)
    for ext_name, ext in sorted(ws.extensions.items()):
        e, f, _ = efn(ext)
        sample = sample_homogeneous(ext.big, DefaultSampleSize, DefaultSampleSeed)
        for name, R in _small_valuations(ws, ext):
            try:
                extensions = extend_valuation(R, ext)
            except UnsupportedExtensionError as err:
                logger.debug(f"Skipping {name} along {ext_name}: {err}")
                continue

            with _check(report, "bijection", extension=ext_name, valuation=name):
                base_rings = base_extensions(R.v1, ext.big.base)
                disagreements = [
                    str(y)
                    for A in extensions
                    for y in sample
                    if ring_member(A, y) != reconstructed_member(R, ext, A.v1, y)
                ]
                report.add(
                    "reconstructed_from_A1",
                    not disagreements,
                    expected=[],
                    actual=disagreements[:5],
                    extension=ext_name,
                    valuation=name,
                    samples=len(sample),
                )
                collisions = [
                    (str(A), str(B))
                    for A, B in itertools.combinations(extensions, 2)
                    if same_ring(A, B)
                ]
                report.add(
                    "injective",
                    not collisions,
                    expected=[],
                    actual=collisions,
                    extension=ext_name,
                    valuation=name,
                )
                report.add(
                    "onto_base_extensions",
                    len(extensions) == len(base_rings),
                    expected=len(base_rings),
                    actual=len(extensions),
                    extension=ext_name,
                    valuation=name,
                )
                restricts = all(same_ring(restrict_valuation(A, ext), R) for A in extensions)
                report.add(
                    "restricts_to_R",
                    restricts,
                    expected=True,
                    actual=restricts,
                    extension=ext_name,
                    valuation=name,
                )

            candidates = ((OracleMode.POWER_E, f == 1), (OracleMode.FACTORIAL_N, e == 1))
            modes = [m for m, ok in candidates if ok]
            for mode in modes:
                with _check(report, "oracle", extension=ext_name, valuation=name, mode=str(mode)):
                    disagreements = 0
                    for A in extensions:
                        for y in sample:
                            if ring_member(A, y) != extension_membership_oracle(A, ext, y, mode):
                                disagreements += 1
                    report.add(
                        "oracle_agreement",
                        disagreements == 0,
                        expected=0,
                        actual=disagreements,
                        extension=ext_name,
                        valuation=name,
                        mode=str(mode),
                        samples=len(sample),
                    )
    return report


def containment_suite(ws: Workspace, rng: random.Random, pool_exponent: int) -> SuiteReport:
    """For R ⊆ R' and extensions A, A': A ⊆ A' iff A1 ⊆ A'1."""
    report = SuiteReport(suite=SuiteName.CONTAINMENT)
    for ext_name, ext in sorted(ws.extensions.items()):
        valuations = _small_valuations(ws, ext)
        for name, R in valuations:
            for other_name, Rp in valuations:
                try:
                    if not ring_containment(R, Rp).contained:
                        continue
                    pairs = [
                        (A, Ap)
                        for A in extend_valuation(R, ext)
                        for Ap in extend_valuation(Rp, ext)
                    ]
                except (UnsupportedComparisonError, UnsupportedExtensionError):
                    continue

                for A, Ap in pairs:
                    try:
                        graded = ring_containment(A, Ap).contained
                        base, _ = base_containment(A.v1, Ap.v1)
                    except UnsupportedComparisonError:
                        continue
                    report.add(
                        "reflection",
                        graded == base,
                        expected=base,
                        actual=graded,
                        extension=ext_name,
                        R=name,
                        Rp=other_name,
                        A=str(A),
                        Ap=str(Ap),
                    )
    return report


def orbits_suite(ws: Workspace, rng: random.Random, pool_exponent: int) -> SuiteReport:
    """G acts transitively on the extensions of R to K."""
    report = SuiteReport(suite=SuiteName.ORBITS)
    for group_name, valuation_name in ORBIT_CASES:
        with _check(report, "orbits", group=group_name, valuation=valuation_name):
            G = ws.group(group_name)
            _, ext = fixed_subfield(G)
            orbits = orbit_on_extensions(G, ws.valuation(valuation_name), ext)
            report.add(
                "single_orbit",
                len(orbits) == 1,
                expected=1,
                actual=[o.to_dict() for o in orbits],
                group=group_name,
                valuation=valuation_name,
            )
            counted = all(len(o.members) * o.stabilizer_order == G.order for o in orbits)
            report.add(
                "orbit_stabilizer",
                counted,
                expected=G.order,
                actual=counted,
                group=group_name,
                valuation=valuation_name,
            )

    for model_name in sorted(ws.specs["models"]):
        with _check(report, "fibers", model=model_name):
            m = ws.model(model_name)
            _, ext = fixed_subfield(m.group)
            for R in m.restrictions(ext):
                fiber = m.fiber(R, ext)
                report.add(
                    "fiber_orbit",
                    m.is_orbit(fiber),
                    expected="one orbit",
                    actual=m.labels(fiber),
                    model=model_name,
                    R=str(R),
                )
                over = m.over_generalizations(R, ext)
                report.add(
                    "fiber_generalizations",
                    m.generalizations(fiber) == over,
                    expected=m.labels(over),
                    actual=m.labels(m.generalizations(fiber)),
                    model=model_name,
                    R=str(R),
                )
    return report


def dominate_suite(ws: Workspace, rng: random.Random, pool_exponent: int) -> SuiteReport:
    """Every A' over R' ⊇ R dominates an extension of R."""
    report = SuiteReport(suite=SuiteName.DOMINATE)
    for group_name, r, rp, ap in DOMINATION_CASES:
        with _check(report, "dominate", R=r, Rp=rp, Ap=ap):
            _, ext = fixed_subfield(ws.group(group_name))
            R, Ap = ws.valuation(r), ws.valuation(ap)
            A = dominated_extension(R, ws.valuation(rp), Ap, ext)
            verified = ring_containment(A, Ap).contained and same_ring(
                restrict_valuation(A, ext), R
            )
            report.add("dominated", verified, expected=True, actual=str(A), R=r, Rp=rp, Ap=ap)
    return report


def patchtop_suite(ws: Workspace, rng: random.Random, pool_exponent: int) -> SuiteReport:
    """Genuine traces have no certificate, perturbed ones have a sound certificate."""
    report = SuiteReport(suite=SuiteName.PATCHTOP)
    cases = []
    genuine: Dict[str, List[MembershipTable]] = {}
    for universe_name, (parent_name, expressions, k_expressions) in UNIVERSES.items():
        parent = ws.graded_field(parent_name)
        elements = universe_elements(parent, expressions)
        k_elems = [ws.element(k, parent_name) for k in k_expressions]
        valuations = [(n, V) for n, V in sorted(ws.valuations.items()) if V.parent == parent]
        for name, V in valuations:
            table = trace_table(V, elements)
            certificate = nonvaluation_certificate(table, k_elems)
            report.add(
                "genuine_trace",
                certificate is None,
                expected=None,
                actual=None if certificate is None else certificate.to_dict(),
                universe=universe_name,
                valuation=name,
            )
            cases.append((universe_name, name, table, k_elems, valuations))
            genuine.setdefault(universe_name, []).append(table)

    # perturbations the finite rules cannot tell from a valuation are counted, not certified
    rules: Counter = Counter()
    undetected = 0
    draws = 0
    while sum(rules.values()) < DefaultPerturbedTables and draws < 4 * DefaultPerturbedTables:
        universe_name, name, table, k_elems, valuations = cases[draws % len(cases)]
        draws += 1
        flips = rng.randint(1, 3)
        perturbed = perturbed_table(table, flips, rng, genuine[universe_name])
        certificate = nonvaluation_certificate(perturbed, k_elems)
        if certificate is None:
            undetected += 1
            logger.debug(f"No rule separates {perturbed.to_dict()} on {universe_name}")
            continue

        rules[str(certificate.rule)] += 1
        sound = certificate.replay(perturbed)
        if sound:
            neighborhood = certificate.neighborhood()
            sound = not any(basic_member(neighborhood, W) for _, W in valuations)
        report.add(
            "perturbed_trace",
            sound,
            expected="replayable certificate excluding every valuation",
            actual=certificate.to_dict(),
            universe=universe_name,
            valuation=name,
            flips=flips,
            run=draws - 1,
        )

    certified = sum(rules.values())
    report.add(
        "perturbed_coverage",
        certified >= DefaultPerturbedTables,
        expected=DefaultPerturbedTables,
        actual={"certified": certified, "undetected": undetected, "draws": draws},
    )
    sign_rules = {str(CertificateRule.II), str(CertificateRule.I_NEG)}
    report.add(
        "rule_variety",
        bool(set(rules) - sign_rules),
        expected=f"a rule outside {sorted(sign_rules)}",
        actual=dict(sorted(rules.items())),
    )
    return report


def neighborhood_suite(ws: Workspace, rng: random.Random, pool_exponent: int) -> SuiteReport:
    """Affine G-stable neighborhoods S ⊆ P{F} ⊆ U on every model scenario."""
    report = SuiteReport(suite=SuiteName.NEIGHBORHOOD)
    for model_name, spec in sorted(ws.specs["models"].items()):
        for scenario in spec.scenarios:
            with _check(report, "neighborhood", model=model_name, scenario=scenario.name):
                m = ws.model(model_name)
                S = [m.index(p) for p in scenario.S]
                U = [m.index(p) for p in scenario.U]
                exponent = scenario.pool_exponent or pool_exponent
                result = stable_affine_neighborhood(m, S, U, exponent)
                again = stable_affine_neighborhood(m, S, U, exponent)
                points = set(result.points)
                F = result.basic_set.positive

                checks = {
                    "affine": result.basic_set.is_affine,
                    "contains_S": set(S) <= points,
                    "inside_U": points <= set(U),
                    "open": m.is_up_closed(points),
                    "stable_points": m.is_stable(points),
                    "stable_F": all(g.apply(f) in F for g in m.group.action for f in F),
                    "deterministic": result.to_dict(m) == again.to_dict(m),
                }
                for check, passed in checks.items():
                    report.add(
                        check,
                        passed,
                        expected=True,
                        actual=result.to_dict(m),
                        model=model_name,
                        scenario=scenario.name,
                    )
    return report


def torsor_suite(ws: Workspace, rng: random.Random, pool_exponent: int) -> SuiteReport:
    """The comparison map is an isomorphism exactly for free actions."""
    report = SuiteReport(suite=SuiteName.TORSOR)
    for name, G in sorted(ws.groups.items()):
        with _check(report, "torsor", group=name):
            result = torsor_check(G, G.parent)
            free = is_free_action(G)
            expected = Verdict.PASS if free else Verdict.FAIL
            report.add(
                "verdict",
                result.verdict == expected,
                expected=str(expected),
                actual=str(result.verdict),
                group=name,
            )
            if result.verdict == Verdict.PASS:
                report.add(
                    "unit_determinant",
                    result.determinant_is_unit,
                    expected=True,
                    actual=str(result.determinant),
                    group=name,
                )
                report.add(
                    "rank_equals_order",
                    result.rank == G.order,
                    expected=G.order,
                    actual=result.rank,
                    group=name,
                )
            else:
                report.add(
                    "witness",
                    bool(result.witness),
                    expected="nonzero witness",
                    actual=result.to_dict()["witness"],
                    group=name,
                )
    return report


def gauss_suite(ws: Workspace, rng: random.Random, pool_exponent: int) -> SuiteReport:
    """The Gauss residue of x(1 - 5x) is x, which is not a square nor a cube."""
    report = SuiteReport(suite=SuiteName.GAUSS)
    with _check(report, "gauss"):
        v = ws.valuation("G5").v1
        field = v.field
        x = field.generator
        a = field.mul(x, field.sub(field.one(), field.mul(field.from_int(5), x)))
        r = base_residue(v, a)
        residue_field = v.residue_field()
        report.add("residue_is_x", r.value == residue_field.generator, expected="x", actual=str(r))
        for d in (2, 3):
            power = residue_power_test(r, d)
            report.add("not_a_power", not power, expected=False, actual=power, d=d)
    return report


SUITES: Dict[SuiteName, Callable[[Workspace, random.Random, int], SuiteReport]] = {
    SuiteName.EFN: efn_suite,
    SuiteName.ARTIN: artin_suite,
    SuiteName.PAIRING: pairing_suite,
    SuiteName.EXTENDV: extendv_suite,
    SuiteName.CONTAINMENT: containment_suite,
    SuiteName.ORBITS: orbits_suite,
    SuiteName.DOMINATE: dominate_suite,
    SuiteName.PATCHTOP: patchtop_suite,
    SuiteName.NEIGHBORHOOD: neighborhood_suite,
    SuiteName.TORSOR: torsor_suite,
    SuiteName.GAUSS: gauss_suite,
}


def suite_names() -> List[str]:
    """Names accepted by `run_suite`."""
    return [str(name) for name in SuiteName]


def run_suite(name: str, ws: Workspace, pool_exponent: int = DefaultPoolExponent) -> SuiteReport:
    """Run a suite by name with the default seed."""
    if name not in suite_names():
        raise UnknownSuiteError(f"Unknown suite '{name}', expected one of {suite_names()}.")

    logger.info(f"Running suite {name}")
    report = SUITES[SuiteName(name)](ws, random.Random(DefaultSampleSeed), pool_exponent)
    logger.info(f"Suite {name}: {len(report.checks)} checks, passed={report.passed}")
    return report
