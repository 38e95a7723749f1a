"""Named verification suites comparing closed forms, bijections and trees against enumeration.

Each suite runs exhaustively up to its bounds and produces a ``VerificationReport``.
Suites registered with ``finding=True`` report disagreements as findings instead of
failures; they check conjectured or negative statements rather than proved identities.
"""
import itertools
import logging
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Literal, Optional, Sequence, Tuple

from modules import bijections as bij
from modules import genfun, gentree, invseq
from modules.config_loader import ConfigLoader
from modules.errors import CombinatoricsError, ConsistencyError, InvalidInputError
from modules.pattern_engine import (
    avoiders,
    count,
    descent_polynomial,
    distribution_counter,
    distribution_matrix,
    equidistributed,
    equidistributed_with,
    gamma_counts,
    gamma_vector,
    joint_series,
    matrix_properties,
    pattern_sets_of_length,
    refined_matrices,
    support_box,
    symmetric_pair,
    transpose,
    wilf_classes,
)
from modules.perm_core import Permutation, as_pattern_set, avoids_all
from modules.perm_statistics import comp, des, desb_set, iar, lmax_set, lmin_set
from modules.series import Series

logger = logging.getLogger(__name__)

Verdict = Literal['pass', 'fail', 'finding']

SEPARABLE = '2413,3142'
SCHRODER_PAIR = '2413,4213'
SCHRODER_NUMBERS = [1, 2, 6, 22, 90, 394, 1806, 8558, 41586, 206098]
CORNER_SEQUENCE = [1, 1, 2, 7, 28, 121, 550, 2591]
SCHRODER_MATRICES = {
    2: [[1, 0], [0, 1]],
    3: [[2, 1, 0], [1, 1, 0], [0, 0, 1]],
    4: [[7, 3, 1, 0], [3, 3, 1, 0], [1, 1, 1, 0], [0, 0, 0, 1]],
    5: [[28, 12, 4, 1, 0], [12, 11, 4, 1, 0], [4, 4, 3, 1, 0], [1, 1, 1, 1, 0],
        [0, 0, 0, 0, 1]],
    6: [[121, 52, 18, 5, 1, 0], [52, 46, 17, 5, 1, 0], [18, 17, 12, 4, 1, 0],
        [5, 5, 4, 3, 1, 0], [1, 1, 1, 1, 1, 0], [0, 0, 0, 0, 0, 1]],
}


@dataclass
class VerificationReport:
    """Outcome of one suite; a failed report always names its first counterexample."""

    check: str
    parameters: Dict[str, Any]
    verdict: Verdict
    witness: Optional[str] = None
    details: List[str] = field(default_factory=list)
    elapsed: float = 0.0

    def __post_init__(self):
        if self.verdict == 'fail' and not self.witness:
            raise ConsistencyError(f"Failed check {self.check} carries no witness")

    @property
    def passed(self) -> bool:
        return self.verdict != 'fail'

    def to_json(self) -> Dict[str, Any]:
        return asdict(self)

    def summary(self) -> str:
        bounds = ', '.join(f"{k}={v}" for k, v in sorted(self.parameters.items()))
        line = f"{self.check}: {self.verdict.upper()} ({bounds}) in {self.elapsed:.2f}s"
        if self.witness:
            line += f"\n  witness: {self.witness}"
        return line


class Outcome:
    """Collects requirement results while a suite runs."""

    def __init__(self, config: ConfigLoader):
        self.config = config
        self.failed = False
        self.witness: Optional[str] = None
        self.details: List[str] = []

    def require(self, ok: bool, witness: str) -> bool:
        if not ok:
            self.failed = True
            if self.witness is None:
                self.witness = witness
            self.details.append(f"FAILED: {witness}")
        return ok

    def note(self, text: str):
        self.details.append(text)


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[..., None]
    defaults: Dict[str, int]
    description: str
    finding: bool = False


CHECKS: Dict[str, Check] = {}

# Alternative names accepted wherever a check name is
ALIASES: Dict[str, str] = {
    'table1': 'single-pattern-gf',
    'table2': 'pattern-pair-gf',
    'thm1.4': 'des-dd-iar',
    'thm5.4': 'schroder-triple',
    'cor5.1': 'schroder-triple',
    'lemma6.2': 'cubic-g',
    'sym-sepa': 'separable-system',
    'thm6.1': 'izero-recurrence',
    'bijection-suite': 'bijections',
    'hankel-suite': 'hankel',
    'thm5.7': 'generating-trees',
    'conjecture5.6': 'length4-iar-sweep',
    'gamma-positivity': 'gamma',
}


def check(name: str, description: str, finding: bool = False, **defaults: int):
    """Register a suite under ``name`` with its default bounds."""
    def register(func: Callable[..., None]) -> Callable[..., None]:
        CHECKS[name] = Check(name, func, defaults, description, finding)
        return func
    return register


def list_checks() -> List[Tuple[str, str]]:
    return [(entry.name, entry.description) for entry in CHECKS.values()]


def aliases_of(name: str) -> List[str]:
    return [alias for alias, target in ALIASES.items() if target == name]


def run_check(name: str, config: Optional[ConfigLoader] = None,
              **bounds: Optional[int]) -> VerificationReport:
    """Run one named suite.

    Bounds resolve in order: registered defaults, then verification.yaml, then keyword
    arguments that are not None. Keywords the suite does not take are ignored.

    Raises:
        InvalidInputError: If the check name is unknown
    """
    name = ALIASES.get(name, name)
    try:
        entry = CHECKS[name]
    except KeyError:
        raise InvalidInputError(f"Unknown check {name!r}; known: {', '.join(CHECKS)}")
    config = config or ConfigLoader()
    parameters = dict(entry.defaults)
    parameters.update({k: v for k, v in config.get_check_bounds(name).items() if k in parameters})
    parameters.update({k: v for k, v in bounds.items() if v is not None and k in parameters})

    logger.info(f"Running {name} with {parameters}")
    outcome = Outcome(config)
    start = time.perf_counter()
    try:
        entry.run(outcome, **parameters)
    except CombinatoricsError as e:
        outcome.require(False, f"{type(e).__name__}: {e}")
    elapsed = time.perf_counter() - start

    if not outcome.failed:
        verdict: Verdict = 'pass'
        logger.info(f"{name} passed in {elapsed:.2f}s")
    elif entry.finding:
        verdict = 'finding'
        logger.warning(f"{name} finding: {outcome.witness}")
    else:
        verdict = 'fail'
        logger.error(f"{name} failed: {outcome.witness}")
    return VerificationReport(name, parameters, verdict, outcome.witness, outcome.details, elapsed)


def run_all(config: Optional[ConfigLoader] = None,
            **bounds: Optional[int]) -> List[VerificationReport]:
    """Run every registered suite in registration order with shared bound overrides."""
    config = config or ConfigLoader()
    return [run_check(name, config, **bounds) for name in CHECKS]


# helpers

def _compare_closed_form(outcome: Outcome, patterns: str, nmax: int):
    closed = genfun.closed_form(patterns, nmax)
    brute = joint_series(patterns, nmax)
    n = closed.first_difference(brute)
    outcome.require(n is None, f"closed form of {patterns} differs from enumeration at n={n}")


def _classes(outcome: Outcome, key: str) -> List[str]:
    return outcome.config.get_classes().get(key, [])


def _as_partition(groups: Sequence[Sequence[str]]) -> set:
    return {frozenset(group) for group in groups}


# suites

@check('schroder-matrices', "M_n(2413,3142) against the tabulated matrices", nmax=6)
def _schroder_matrices(outcome: Outcome, nmax: int):
    for n in range(2, min(nmax, max(SCHRODER_MATRICES)) + 1):
        rows = distribution_matrix(n, SEPARABLE).as_lists()
        outcome.require(rows == SCHRODER_MATRICES[n], f"n={n}: {rows}")


@check('corner-sequence', "entry (1,1) of M_n(2413,3142)", nmax=8)
def _corner_sequence(outcome: Outcome, nmax: int):
    for n in range(1, min(nmax, len(CORNER_SEQUENCE)) + 1):
        corner = distribution_matrix(n, SEPARABLE).entry(1, 1)
        outcome.require(corner == CORNER_SEQUENCE[n - 1], f"n={n}: corner {corner}")


@check('single-pattern-gf', "(des,iar,comp) closed forms of single length-3 patterns", nmax=9)
def _single_pattern_gf(outcome: Outcome, nmax: int):
    for patterns in _classes(outcome, 'catalan'):
        _compare_closed_form(outcome, patterns, nmax)


@check('pattern-pair-gf', "(des,iar,comp) closed forms of length-3 pattern pairs", nmax=10)
def _pattern_pair_gf(outcome: Outcome, nmax: int):
    for patterns in _classes(outcome, 'pairs'):
        _compare_closed_form(outcome, patterns, nmax)
    for n in range(5, nmax + 1):
        outcome.require(count(n, '123,321') == 0, f"S_{n}(123,321) is not empty")


@check('schroder-gf', "closed form of the Schröder classes and the cubic for S",
       nmax=9, order=12)
def _schroder_gf(outcome: Outcome, nmax: int, order: int):
    for patterns in genfun.SCHRODER_CLASSES:
        _compare_closed_form(outcome, patterns, nmax)
    residual = genfun.schroder_residual(genfun.schroder_S_series(order))
    outcome.require(residual.is_zero(), f"S residual nonzero at order {order}")


@check('des-dd-iar', "(des,dd,iar) over S_n(2413,3142) and S_n(2413,4213)", nmax=9)
def _des_dd_iar(outcome: Outcome, nmax: int):
    n = equidistributed(SEPARABLE, SCHRODER_PAIR, ('des', 'dd', 'iar'), nmax)
    outcome.require(n is None, f"(des,dd,iar) differs at n={n}")


@check('schroder-triple', "(des,iar,comp) across the Schröder classes and its symmetry", nmax=9)
def _schroder_triple(outcome: Outcome, nmax: int):
    stats = ('des', 'iar', 'comp')
    for patterns in genfun.SCHRODER_CLASSES[1:]:
        n = equidistributed(SEPARABLE, patterns, stats, nmax)
        outcome.require(n is None, f"{patterns} differs from separables at n={n}")
    for patterns in genfun.SCHRODER_CLASSES:
        n = symmetric_pair(patterns, stats, (1, 2), nmax)
        outcome.require(n is None, f"(iar,comp) not symmetric over {patterns} at n={n}")


@check('cubic-g', "cubic equation for G from permutations and inversion sequences", order=8)
def _cubic_g(outcome: Outcome, order: int):
    from_permutations = genfun.brute_force_G(order)
    from_sequences = invseq.statistic_series(order)
    n = from_permutations.first_difference(from_sequences)
    outcome.require(n is None, f"G from permutations and sequences differ at n={n}")
    n = from_permutations.first_difference(genfun.brute_force_G(order, SEPARABLE))
    outcome.require(n is None, f"G over separables differs at n={n}")
    residual = genfun.cubic_G_residual(from_permutations)
    outcome.require(residual.is_zero(), f"cubic residual nonzero up to order {order}")


@check('separable-system', "the five equations linking L, R and S over separables", order=8)
def _separable_system(outcome: Outcome, order: int):
    for name, residual in genfun.verify_sepa_system(order).items():
        outcome.require(residual.is_zero(), f"equation {name} has a nonzero residual")
    brute = joint_series(SEPARABLE, order, ('des', 'dd', 'iar'), ('t', 'x', 'y'), start=1)
    n = genfun.separable_series_from_system(order).first_difference(brute)
    outcome.require(n is None, f"solved S differs from enumeration at n={n}")


@check('izero-recurrence', "recurrence for initial zeros against enumeration",
       nmax=12, perm_nmax=9)
def _izero_recurrence(outcome: Outcome, nmax: int, perm_nmax: int):
    table = invseq.izero_recurrence_table(max(nmax, perm_nmax))
    brute = invseq.izero_table(nmax)
    for n in range(1, nmax + 1):
        outcome.require(table[n - 1] == brute[n - 1], f"n={n}: {table[n - 1]} != {brute[n - 1]}")
    for n in range(1, perm_nmax + 1):
        by_iar = Counter(iar(pi) for pi in avoiders(n, SCHRODER_PAIR))
        row = [by_iar[k] for k in range(1, n + 1)]
        outcome.require(table[n - 1] == row, f"n={n}: iar counts {row}")
        if n <= len(SCHRODER_NUMBERS):
            outcome.require(sum(row) == SCHRODER_NUMBERS[n - 1], f"n={n}: row sum {sum(row)}")
    for n in range(2, nmax + 1):
        outcome.require(invseq.check_delta_preimages(n), f"delta preimage counts at n={n}")


def _check_word_encodings(outcome: Outcome, n: int):
    words_321 = set()
    for pi in avoiders(n, '321'):
        w = bij.alpha(pi)
        words_321.add(w)
        outcome.require(bij.alpha_inv(w) == pi, f"alpha round trip fails on {pi}")
        outcome.require(bij.word_statistics(w) == bij.permutation_statistics(pi),
                        f"alpha transport fails on {pi}")
        sigma = bij.xi(pi)
        outcome.require(avoids_all(sigma, '312') and bij.xi_inv(sigma) == pi,
                        f"xi fails on {pi}")
        outcome.require(bij.permutation_statistics(sigma) == bij.permutation_statistics(pi),
                        f"xi changes (LMAX,LMAXP,iar,comp) on {pi}")
    words_312 = set()
    for pi in avoiders(n, '312'):
        w = bij.beta(pi)
        words_312.add(w)
        outcome.require(bij.beta_inv(w) == pi, f"beta round trip fails on {pi}")
        outcome.require(bij.word_statistics(w) == bij.permutation_statistics(pi),
                        f"beta transport fails on {pi}")
    outcome.require(words_321 == words_312, f"alpha and beta images differ at n={n}")
    for w in words_321:
        if not w.S or w.S[0] == 1 or bij.ics(w) < 2:
            continue
        v = bij.psi(w)
        outcome.require(v.S == w.S and bij.ics(v) == bij.ics(w) - 1
                        and bij.equ(v) == bij.equ(w) + 1 and bij.psi_inv(v) == w,
                        f"psi fails on {w}")


def _check_witnesses(outcome: Outcome, n: int):
    for pattern, witness, kept in (
        ('321', bij.symmetry_witness_321, (lmax_set,)),
        ('312', bij.symmetry_witness_312, (lmax_set, desb_set)),
        ('132', bij.symmetry_witness_132, (lmax_set, lmin_set)),
    ):
        for pi in avoiders(n, pattern):
            sigma = witness(pi)
            ok = (avoids_all(sigma, pattern) and witness(sigma) == pi
                  and iar(sigma) == comp(pi) and comp(sigma) == iar(pi)
                  and all(stat(sigma) == stat(pi) for stat in kept))
            outcome.require(ok, f"{pattern} symmetry witness fails on {pi}")


def _check_phi(outcome: Outcome, n: int):
    for pi in avoiders(n, '132'):
        if not bij.phi_eligible(pi):
            continue
        sigma = bij.phi(pi)
        k = iar(pi)
        ok = (bij.phi_inv(sigma) == pi
              and sigma.values[:k - 1] == pi.values[:k - 1]
              and lmax_set(sigma) == lmax_set(pi) and lmin_set(sigma) == lmin_set(pi)
              and iar(sigma) == k - 1 and comp(sigma) == comp(pi) + 1)
        outcome.require(ok, f"phi fails on {pi}")


def _check_theta(outcome: Outcome, n: int):
    for pi in avoiders(n, '213'):
        sigma = bij.theta(pi)
        ok = (avoids_all(sigma, '231') and bij.theta_inv(sigma) == pi
              and (n == 0 or sigma(1) == pi(1)) and des(sigma) == des(pi)
              and comp(sigma) == iar(pi) and iar(sigma) == comp(pi))
        outcome.require(ok, f"theta fails on {pi}")
    for source, target, mapping in (('132,213', '132,231', bij.theta),
                                    ('213,312', '231,312', bij.theta),
                                    ('231,321', '231,312', bij.xi)):
        outcome.require(bij.maps_class_onto(mapping, source, target, n),
                        f"{mapping.__name__} does not map S_{n}({source}) onto S_{n}({target})")


@check('bijections', "round trips and statistic transport of every bijection", nmax=8)
def _bijections(outcome: Outcome, nmax: int):
    for n in range(1, nmax + 1):
        _check_word_encodings(outcome, n)
        _check_witnesses(outcome, n)
        _check_phi(outcome, n)
        _check_theta(outcome, n)


@check('hankel', "Hankel refinements and the skew-diagonal identity", nmax=8)
def _hankel(outcome: Outcome, nmax: int):
    for n in range(1, nmax + 1):
        for patterns in ('312', '321'):
            for S, matrix in refined_matrices(n, patterns, 'LMAX').items():
                if 1 in S:
                    continue
                outcome.require('hankel' in matrix_properties(matrix),
                                f"M_{n}^(LMAX={S})({patterns}) is not Hankel")
                residual = genfun.hankel_identity_residual(matrix)
                outcome.require(residual.is_zero(),
                                f"skew-diagonal identity fails for LMAX={S} over {patterns}")
        for patterns in ('132', '132,312', '132,321'):
            for key, matrix in refined_matrices(n, patterns, 'LMAX,LMIN').items():
                outcome.require('hankel' in matrix_properties(matrix),
                                f"M_{n}^(LMAX,LMIN={key})({patterns}) is not Hankel")
        outcome.require(distribution_matrix(n, '321').rows == distribution_matrix(n, '312').rows,
                        f"M_{n}(321) != M_{n}(312)")
        outcome.require(
            distribution_matrix(n, '231').rows == transpose(distribution_matrix(n, '213')).rows,
            f"M_{n}(231) is not the transpose of M_{n}(213)")


@check('generating-trees', "abstract and concrete generating trees of Schröder pairs", depth=8)
def _generating_trees(outcome: Outcome, depth: int):
    abstract = gentree.build_tree(gentree.schroder_rule, depth)
    sizes = gentree.level_sizes(abstract)
    outcome.require(sizes == SCHRODER_NUMBERS[:depth], f"level sizes {sizes}")
    for patterns in ('2431,4231', SCHRODER_PAIR):
        concrete = gentree.build_pattern_tree(patterns, depth)
        outcome.require(gentree.compare_trees(abstract, concrete),
                        f"tree of {patterns} is not isomorphic to the rewriting tree")
        for n in range(1, depth + 1):
            outcome.require(
                gentree.path_lmaxp_distribution(abstract, n)
                == gentree.lmaxp_distribution(n, patterns),
                f"LMAXP from tree paths differs for {patterns} at n={n}")
        for n in range(1, depth):
            bad = gentree.growth_rule_mismatches(n, patterns)
            outcome.require(not bad, f"growth rule of {patterns} fails on {bad[:1]}")
    n = equidistributed(SCHRODER_PAIR, '2431,4231', ('LMAXP', 'comp'), depth)
    outcome.require(n is None, f"(LMAXP,comp) differs at n={n}")


@check('length4-iar-sweep', "length-4 pairs iar-equidistributed with (2413,4213)",
       finding=True, nmax=8)
def _length4_iar_sweep(outcome: Outcome, nmax: int):
    reference = outcome.config.get_pattern_catalog().get('conjecture_reference', SCHRODER_PAIR)
    candidates = outcome.config.get_conjecture_candidates()
    schroder = {as_pattern_set(patterns) for patterns in genfun.SCHRODER_CLASSES}
    pairs = [pair for pair in pattern_sets_of_length(4, 2) if pair not in schroder]
    matching = set(equidistributed_with(reference, pairs, ('iar',), nmax))
    listed = {as_pattern_set(c['patterns']) for c in candidates if c['iar']}
    outcome.note(f"{len(matching)} of {len(pairs)} pairs iar-equidistributed up to n={nmax}")
    for pair in sorted(matching - listed, key=str):
        outcome.require(False, f"{pair}: iar equal but not listed")
    for pair in sorted(listed - matching, key=str):
        outcome.require(False, f"{pair}: listed but iar differs")
    for candidate in candidates:
        patterns = candidate['patterns']
        observed = as_pattern_set(patterns) in matching
        outcome.note(f"{patterns}: iar {'equal' if observed else 'different'}")
        outcome.require(observed == candidate['iar'], f"{patterns}: iar equality is {observed}")
        if 'iar_comp' in candidate:
            joint = equidistributed(reference, patterns, ('iar', 'comp'), nmax) is None
            outcome.require(joint == candidate['iar_comp'],
                            f"{patterns}: (iar,comp) equality is {joint}")


@check('gamma', "gamma vectors of Schröder descent polynomials", nmax=9)
def _gamma(outcome: Outcome, nmax: int):
    for n in range(1, nmax + 1):
        counts = []
        for patterns in (SEPARABLE, SCHRODER_PAIR):
            vector = gamma_vector(descent_polynomial(n, patterns), n)
            direct = gamma_counts(n, patterns)
            outcome.require(vector == direct, f"n={n}, {patterns}: {vector} != {direct}")
            counts.append(direct)
        outcome.require(counts[0] == counts[1], f"n={n}: gamma counts differ {counts}")


@check('comtet-classes', "iar and comp classes of length-3 patterns and pairs", nmax=9)
def _comtet_classes(outcome: Outcome, nmax: int):
    expected = outcome.config.get_pattern_catalog().get('comtet_classes', {})
    for family, key in (('single', 'catalan'), ('pairs', 'pairs')):
        for stat, groups in expected.get(family, {}).items():
            observed = wilf_classes(_classes(outcome, key), (stat,), nmax)
            outcome.require(_as_partition(observed) == _as_partition(groups),
                            f"{stat} classes of {family}: {observed}")


@check('matrix-shapes', "shape annotations of the distribution matrices", nmax=8)
def _matrix_shapes(outcome: Outcome, nmax: int):
    for patterns, shapes in outcome.config.get_expected_shapes().items():
        for n in range(1, nmax + 1):
            matrix = distribution_matrix(n, patterns)
            properties = matrix_properties(matrix)
            for shape in shapes:
                if shape == 'box2':
                    rows, cols = support_box(matrix)
                    ok = rows <= 2 and cols <= 2
                else:
                    ok = shape in properties
                outcome.require(ok, f"M_{n}({patterns}) is not {shape}")
    for first, second in (('213', '231'), ('213,312', '231,312'), ('132,213', '132,231')):
        for n in range(1, nmax + 1):
            flipped = transpose(distribution_matrix(n, first)).rows
            outcome.require(
                distribution_matrix(n, second).rows == flipped,
                f"M_{n}({second}) is not the transpose of M_{n}({first})")


@check('refined-symmetry', "(iar,comp) symmetry jointly with set-valued statistics", nmax=9)
def _refined_symmetry(outcome: Outcome, nmax: int):
    cases = (
        ('321', ('LMAX', 'iar', 'comp')),
        ('312', ('LMAX', 'DESB', 'iar', 'comp')),
        ('132', ('LMAX', 'LMIN', 'iar', 'comp')),
        ('132,312', ('LMAX', 'LMIN', 'iar', 'comp')),
        ('132,321', ('LMAX', 'LMIN', 'iar', 'comp')),
        (SEPARABLE, ('LMAX', 'DESB', 'iar', 'comp')),
    )
    for patterns, stats in cases:
        n = symmetric_pair(patterns, stats, (len(stats) - 2, len(stats) - 1), nmax)
        outcome.require(n is None, f"{stats} not symmetric over {patterns} at n={n}")


def _comtet_mismatch(patterns: str, stat: str, nmax: int) -> Optional[int]:
    for n in range(1, nmax + 1):
        if (distribution_counter(n, patterns, (stat,))
                != distribution_counter(n, patterns, ('comp',))):
            return n
    return None


@check('negative-findings', "stated non-equivalences are observed", finding=True, nmax=7)
def _negative_findings(outcome: Outcome, nmax: int):
    n = equidistributed(SEPARABLE, SCHRODER_PAIR, ('DES',), nmax)
    outcome.note(f"DES first differs at n={n}")
    outcome.require(n is not None, f"DES agrees on both Schröder classes up to n={nmax}")
    n = equidistributed(SEPARABLE, SCHRODER_PAIR, ('dd', 'comp'), nmax)
    outcome.note(f"(dd,comp) first differs at n={n}")
    outcome.require(n is not None, f"(dd,comp) agrees up to n={nmax}")
    n = _comtet_mismatch('2314,3214', 'iar', nmax)
    outcome.note(f"iar and comp first differ over (2314,3214) at n={n}")
    outcome.require(n is not None, f"iar is Comtet over (2314,3214) up to n={nmax}")
    everything = [Permutation.trusted(v) for v in itertools.permutations(range(1, 5))]
    outcome.require(Counter(map(iar, everything)) != Counter(map(comp, everything)),
                    "iar and comp agree over S_4")


@check('schroder-des', "DES and (DES, comp) equidistribution of Schröder pairs", nmax=8)
def _schroder_des(outcome: Outcome, nmax: int):
    for patterns in ('2314,3214', '3412,4312'):
        n = equidistributed(SCHRODER_PAIR, patterns, ('DES',), nmax)
        outcome.require(n is None, f"DES differs between {SCHRODER_PAIR} and {patterns} at n={n}")
    n = equidistributed(SCHRODER_PAIR, '3412,4312', ('DES', 'comp'), nmax)
    outcome.require(n is None, f"(DES, comp) differs from 3412,4312 at n={n}")
    n = equidistributed(SEPARABLE, SCHRODER_PAIR, ('des',), nmax)
    outcome.require(n is None, f"des differs from separables at n={n}")


@check('auxiliary-series', "intermediate series against enumeration", order=8)
def _auxiliary_series(outcome: Outcome, order: int):
    z = Series.z(order)
    comparisons = {
        'H321': (genfun.auxiliary_H321(order),
                 joint_series('321', order, ('des', 'iar'), ('t', 'r'))),
        'A123': (genfun.p * z * genfun.auxiliary_A123(order),
                 joint_series('123', order, ('des', 'comp'), ('t', 'p'),
                              where=lambda pi: iar(pi) == 1)),
        'B123': (genfun.p * z * genfun.auxiliary_B123(order),
                 joint_series('123', order, ('des', 'comp'), ('t', 'p'),
                              where=lambda pi: iar(pi) == 2)),
        'S312_p1': (1 + genfun.r * z * genfun.auxiliary_S312_p1(order),
                    joint_series('312', order, ('des', 'iar'), ('t', 'r'))),
    }
    for name, (closed, brute) in comparisons.items():
        n = closed.first_difference(brute)
        outcome.require(n is None, f"{name} differs from enumeration at n={n}")
    n = genfun.Cstar_series(order).first_difference(genfun.cstar_by_reversal(order))
    outcome.require(n is None, f"C* by reversal differs at n={n}")


@check('inversion-bridge', "(asc,da,izero) over I_n(021) against the Schröder classes", nmax=8)
def _inversion_bridge(outcome: Outcome, nmax: int):
    for patterns in (SCHRODER_PAIR, SEPARABLE):
        n = invseq.bridge_mismatch(nmax, patterns)
        outcome.require(n is None, f"(asc,da,izero) differs from {patterns} at n={n}")
    for n in range(1, nmax + 1):
        des = descent_polynomial(n, SEPARABLE).univariate('t')
        outcome.require(invseq.asc_polynomial(n) == des,
                        f"asc and des polynomials differ at n={n}")
