"""Maximum entropy model over (outcome, context) with Generalized Iterative
Scaling training.

The joint form is p(b,c) = pi * prod_j alpha_j^{f_j(b,c)} with binary features
pairing one contextual predicate with one outcome. Training is conditional
GIS: expectations are taken over outcomes given each observed context, so pi
cancels everywhere the decision rule looks. A per-outcome correction (slack)
feature absorbs C minus the active-feature count, as GIS's constant-sum
condition requires.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .corpus import NO, YES, AbbreviationSet
from .features import PredicateRegistry

OUTCOMES = (YES, NO)

DEFAULT_MAX_ITERS = 100
DEFAULT_TOLERANCE = 1e-3
DEFAULT_CLAMP = 50.0

# Relative constraint violation uses max(empirical, floor) as denominator.
VIOLATION_FLOOR = 1.0

MODEL_FORMAT_VERSION = 1


class TrainingError(Exception):
    pass


class ModelFormatError(Exception):
    """Unreadable, truncated, or inconsistent model file."""


@dataclass(frozen=True)
class TrainingEvent:
    active_predicates: tuple[int, ...]
    outcome: str
    multiplicity: int = 1


@dataclass
class Model:
    """Trained classifier state, bound to its registry by fingerprint."""

    template_set: str
    registry: PredicateRegistry
    abbreviations: tuple[str, ...]
    log_alpha: dict[tuple[int, str], float]
    corr_log_alpha: dict[str, float]
    corr_active: dict[str, bool]
    C: int
    pi: float = 1.0
    clamp: float = DEFAULT_CLAMP
    converged: bool = False
    iterations: int = 0
    abbrev_case_sensitive: bool = True
    fingerprint: str = ""
    history: list[tuple[float, float]] = field(default_factory=list)

    def __post_init__(self):
        if not self.fingerprint:
            self.fingerprint = registry_fingerprint(
                self.registry, self.abbreviations, self.template_set
            )

    def abbreviation_set(self) -> AbbreviationSet:
        return AbbreviationSet(
            frozenset(self.abbreviations), case_sensitive=self.abbrev_case_sensitive
        )


def registry_fingerprint(
    registry: PredicateRegistry, abbreviations: Sequence[str], template_set: str
) -> str:
    h = hashlib.sha256()
    h.update(template_set.encode())
    for key, count in zip(registry.keys, registry.counts):
        h.update(b"\x00" + key.encode() + b"\x01" + str(count).encode())
    for tok in sorted(abbreviations):
        h.update(b"\x02" + tok.encode())
    return h.hexdigest()


def merge_events(raw: Iterable[tuple[tuple[int, ...], str]]) -> list[TrainingEvent]:
    """Merge identical (context, outcome) events into multiplicities."""
    counts: dict[tuple[tuple[int, ...], str], int] = {}
    for active, outcome in raw:
        counts[(active, outcome)] = counts.get((active, outcome), 0) + 1
    return [
        TrainingEvent(active, outcome, mult)
        for (active, outcome), mult in sorted(counts.items())
    ]


def _log_weight(model: Model, active: Sequence[int], outcome: str) -> float:
    total = 0.0
    n = 0
    for p in active:
        la = model.log_alpha.get((p, outcome))
        if la is not None:
            total += la
            n += 1
    if model.corr_active.get(outcome):
        total += max(model.C - n, 0) * model.corr_log_alpha[outcome]
    return total + math.log(model.pi)


def score(model: Model, active_predicates: Sequence[int]) -> tuple[float, float]:
    """Joint weights (w_yes, w_no); finite and positive by construction."""
    ly = _log_weight(model, active_predicates, YES)
    ln_ = _log_weight(model, active_predicates, NO)
    return math.exp(min(ly, 700.0)), math.exp(min(ln_, 700.0))


def conditional_yes(model: Model, active_predicates: Sequence[int]) -> float:
    ly = _log_weight(model, active_predicates, YES)
    ln_ = _log_weight(model, active_predicates, NO)
    # pi cancels; logistic of the log-odds keeps this in (0, 1).
    return 1.0 / (1.0 + math.exp(min(ln_ - ly, 700.0)))


def classify(model: Model, active_predicates: Sequence[int]) -> bool:
    """Boundary iff p(yes|c) > 0.5 strictly."""
    return conditional_yes(model, active_predicates) > 0.5


class _GisProblem:
    """Vectorized training state: one row per distinct context, one column per
    (predicate, outcome) feature plus the two correction columns."""

    def __init__(self, events: Sequence[TrainingEvent], registry: PredicateRegistry):
        if not events:
            raise TrainingError("no training events")
        n_preds = len(registry)
        contexts: dict[tuple[int, ...], dict[str, int]] = {}
        for ev in events:
            if ev.multiplicity < 1:
                raise TrainingError("event multiplicity must be >= 1")
            if any(p < 0 or p >= n_preds for p in ev.active_predicates):
                raise TrainingError("event references predicate outside registry")
            slot = contexts.setdefault(ev.active_predicates, {YES: 0, NO: 0})
            slot[ev.outcome] += ev.multiplicity
        # Canonical ordering makes training invariant to event permutation.
        self.contexts = sorted(contexts)
        self.m_yes = np.array([contexts[c][YES] for c in self.contexts], float)
        self.m_no = np.array([contexts[c][NO] for c in self.contexts], float)
        self.m_tot = self.m_yes + self.m_no

        emp_pairs: dict[tuple[int, str], float] = {}
        for ctx in self.contexts:
            slot = contexts[ctx]
            for b in OUTCOMES:
                if slot[b]:
                    for p in ctx:
                        emp_pairs[(p, b)] = emp_pairs.get((p, b), 0.0) + slot[b]
        self.feature_pairs = sorted(emp_pairs)
        self.pair_col = {pair: j for j, pair in enumerate(self.feature_pairs)}
        n_feat = len(self.feature_pairs)
        self.col_yes = n_feat
        self.col_no = n_feat + 1
        n_cols = n_feat + 2

        # Active-feature counts per (context, outcome) determine C.
        n_ctx = len(self.contexts)
        count_b = {b: np.zeros(n_ctx) for b in OUTCOMES}
        for i, ctx in enumerate(self.contexts):
            for b in OUTCOMES:
                count_b[b][i] = sum(1 for p in ctx if (p, b) in emp_pairs)
        max_count = max(
            (int(count_b[b].max()) for b in OUTCOMES if n_ctx), default=0
        )
        self.C = max(max_count, 1)

        self.A = {b: np.zeros((n_ctx, n_cols)) for b in OUTCOMES}
        for i, ctx in enumerate(self.contexts):
            for b in OUTCOMES:
                for p in ctx:
                    col = self.pair_col.get((p, b))
                    if col is not None:
                        self.A[b][i, col] = 1.0
        self.A[YES][:, self.col_yes] = self.C - count_b[YES]
        self.A[NO][:, self.col_no] = self.C - count_b[NO]

        self.empirical = self.A[YES].T @ self.m_yes + self.A[NO].T @ self.m_no
        self.active_cols = self.empirical > 0.0
        self.theta = np.zeros(n_cols)

    def expectations(self) -> tuple[np.ndarray, np.ndarray, float]:
        """(expected counts, p_yes per context, total conditional log-likelihood)."""
        ly = self.A[YES] @ self.theta
        ln_ = self.A[NO] @ self.theta
        d = ln_ - ly
        p_yes = 1.0 / (1.0 + np.exp(np.clip(d, -700.0, 700.0)))
        p_no = 1.0 - p_yes
        expected = self.A[YES].T @ (self.m_tot * p_yes) + self.A[NO].T @ (
            self.m_tot * p_no
        )
        with np.errstate(divide="ignore"):
            ll = float(
                np.sum(self.m_yes * np.log(np.maximum(p_yes, 1e-300)))
                + np.sum(self.m_no * np.log(np.maximum(p_no, 1e-300)))
            )
        return expected, p_yes, ll

    def violation(self, expected: np.ndarray) -> float:
        act = self.active_cols
        if not act.any():
            return 0.0
        denom = np.maximum(self.empirical[act], VIOLATION_FLOOR)
        return float(np.max(np.abs(expected[act] - self.empirical[act]) / denom))

    def update(self, expected: np.ndarray, clamp: float) -> None:
        act = self.active_cols & (expected > 0.0)
        step = np.zeros_like(self.theta)
        step[act] = np.log(self.empirical[act] / expected[act]) / self.C
        # Zero empirical count with positive expectation: push toward -clamp.
        dead = self.active_cols & ~act
        step[dead] = -2.0 * clamp
        self.theta = np.clip(self.theta + step, -clamp, clamp)
        self.theta[~self.active_cols] = 0.0
        if not np.isfinite(self.theta).all():
            bad = int(np.argmax(~np.isfinite(self.theta)))
            name = (
                self.feature_pairs[bad]
                if bad < len(self.feature_pairs)
                else ("correction", OUTCOMES[bad - len(self.feature_pairs)])
            )
            raise TrainingError(f"non-finite parameter for feature {name}")


def train_gis(
    events: Sequence[TrainingEvent],
    registry: PredicateRegistry,
    *,
    template_set: str = "portable",
    abbreviations: Sequence[str] = (),
    abbrev_case_sensitive: bool = True,
    max_iters: int = DEFAULT_MAX_ITERS,
    tolerance: float = DEFAULT_TOLERANCE,
    clamp: float = DEFAULT_CLAMP,
) -> Model:
    """Fit alphas by GIS: alpha_j <- alpha_j * (empirical_j/expected_j)^(1/C).

    Stops when the max relative constraint violation drops below ``tolerance``
    or after ``max_iters`` updates. The per-iteration (log-likelihood,
    violation) trace is kept on the model.
    """
    prob = _GisProblem(events, registry)
    history: list[tuple[float, float]] = []
    converged = False
    iterations = 0
    while True:
        expected, _p_yes, ll = prob.expectations()
        viol = prob.violation(expected)
        history.append((ll, viol))
        if viol <= tolerance:
            converged = True
            break
        if iterations >= max_iters:
            break
        prob.update(expected, clamp)
        iterations += 1

    log_alpha = {
        pair: float(prob.theta[j])
        for j, pair in enumerate(prob.feature_pairs)
        if prob.active_cols[j]
    }
    corr_log_alpha = {
        YES: float(prob.theta[prob.col_yes]),
        NO: float(prob.theta[prob.col_no]),
    }
    corr_active = {
        YES: bool(prob.active_cols[prob.col_yes]),
        NO: bool(prob.active_cols[prob.col_no]),
    }
    return Model(
        template_set=template_set,
        registry=registry,
        abbreviations=tuple(sorted(abbreviations)),
        log_alpha=log_alpha,
        corr_log_alpha=corr_log_alpha,
        corr_active=corr_active,
        C=prob.C,
        converged=converged,
        iterations=iterations,
        abbrev_case_sensitive=abbrev_case_sensitive,
        history=history,
    )


def _model_problem(model: Model, events: Sequence[TrainingEvent]) -> _GisProblem:
    prob = _GisProblem(events, model.registry)
    if prob.C != model.C:
        # Constraint checks must use the model's own correction geometry.
        raise TrainingError(
            f"event set implies C={prob.C} but model has C={model.C}"
        )
    for j, pair in enumerate(prob.feature_pairs):
        prob.theta[j] = model.log_alpha.get(pair, 0.0)
    prob.theta[prob.col_yes] = model.corr_log_alpha[YES]
    prob.theta[prob.col_no] = model.corr_log_alpha[NO]
    return prob


def check_constraints(model: Model, events: Sequence[TrainingEvent]) -> float:
    """Max over features of |expected - empirical| / max(empirical, floor)."""
    if not events:
        return 0.0
    prob = _model_problem(model, events)
    expected, _, _ = prob.expectations()
    return prob.violation(expected)


def constraint_violations(
    model: Model, events: Sequence[TrainingEvent]
) -> dict[tuple[int, str] | str, float]:
    """Per-feature relative violations; correction features keyed by outcome."""
    prob = _model_problem(model, events)
    expected, _, _ = prob.expectations()
    out: dict[tuple[int, str] | str, float] = {}
    for j, pair in enumerate(prob.feature_pairs):
        if prob.active_cols[j]:
            denom = max(prob.empirical[j], VIOLATION_FLOOR)
            out[pair] = abs(expected[j] - prob.empirical[j]) / denom
    for b, col in ((YES, prob.col_yes), (NO, prob.col_no)):
        if prob.active_cols[col]:
            denom = max(prob.empirical[col], VIOLATION_FLOOR)
            out[f"correction:{b}"] = abs(expected[col] - prob.empirical[col]) / denom
    return out


def log_likelihood(model: Model, events: Sequence[TrainingEvent]) -> float:
    prob = _model_problem(model, events)
    _, _, ll = prob.expectations()
    return ll


def entropy(model: Model, events: Sequence[TrainingEvent]) -> float:
    """Average conditional entropy of the outcome (nats per event) under the
    empirical context distribution."""
    prob = _model_problem(model, events)
    _, p_yes, _ = prob.expectations()
    p_no = 1.0 - p_yes
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -(
            p_yes * np.where(p_yes > 0, np.log(np.maximum(p_yes, 1e-300)), 0.0)
            + p_no * np.where(p_no > 0, np.log(np.maximum(p_no, 1e-300)), 0.0)
        )
    total = float(np.sum(prob.m_tot))
    return float(np.sum(prob.m_tot * h) / total)


# ----------------------------------------------------------------------------
# Model persistence: versioned text format with bit-exact float round trip.

def save_model(model: Model, path: str | Path) -> None:
    lines = [
        f"sentbound-model v{MODEL_FORMAT_VERSION}",
        f"template_set {model.template_set}",
        f"C {model.C}",
        f"pi {float(model.pi).hex()}",
        f"clamp {float(model.clamp).hex()}",
        f"converged {int(model.converged)}",
        f"iterations {model.iterations}",
        f"abbrev_case_sensitive {int(model.abbrev_case_sensitive)}",
        f"fingerprint {model.fingerprint}",
        f"cutoff {model.registry.cutoff}",
        f"[registry] {len(model.registry)}",
    ]
    for i, (key, count) in enumerate(zip(model.registry.keys, model.registry.counts)):
        lines.append(f"{i}\t{count}\t{key}")
    lines.append(f"[abbreviations] {len(model.abbreviations)}")
    lines.extend(model.abbreviations)
    feats = sorted(model.log_alpha.items())
    lines.append(f"[features] {len(feats)}")
    for (p, b), la in feats:
        lines.append(f"{p}\t{b}\t{la.hex()}")
    lines.append("[corrections]")
    for b in OUTCOMES:
        lines.append(
            f"{b}\t{int(model.corr_active.get(b, False))}\t{model.corr_log_alpha[b].hex()}"
        )
    lines.append("[end]")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> Model:
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    it = iter(enumerate(lines, start=1))

    def next_line() -> str:
        try:
            _, line = next(it)
        except StopIteration:
            raise ModelFormatError(f"{path}: truncated model file") from None
        return line

    header = next_line()
    if header != f"sentbound-model v{MODEL_FORMAT_VERSION}":
        raise ModelFormatError(f"{path}: bad header or unsupported version: {header!r}")

    fields: dict[str, str] = {}
    for name in (
        "template_set", "C", "pi", "clamp", "converged", "iterations",
        "abbrev_case_sensitive", "fingerprint", "cutoff",
    ):
        line = next_line()
        key, sep, value = line.partition(" ")
        if key != name or not sep:
            raise ModelFormatError(f"{path}: expected header field {name!r}, got {line!r}")
        fields[name] = value

    def section(tag: str) -> int:
        line = next_line()
        head, _, count = line.partition(" ")
        if head != tag:
            raise ModelFormatError(f"{path}: expected section {tag}, got {line!r}")
        try:
            return int(count)
        except ValueError:
            raise ModelFormatError(f"{path}: bad section count in {line!r}") from None

    try:
        n_reg = section("[registry]")
        keys, counts = [], []
        for i in range(n_reg):
            parts = next_line().split("\t", 2)
            if len(parts) != 3 or int(parts[0]) != i:
                raise ModelFormatError(f"{path}: bad registry row {i}")
            counts.append(int(parts[1]))
            keys.append(parts[2])
        n_abbr = section("[abbreviations]")
        abbreviations = tuple(next_line() for _ in range(n_abbr))
        n_feat = section("[features]")
        log_alpha = {}
        for _ in range(n_feat):
            parts = next_line().split("\t")
            if len(parts) != 3 or parts[1] not in OUTCOMES:
                raise ModelFormatError(f"{path}: bad feature row")
            log_alpha[(int(parts[0]), parts[1])] = float.fromhex(parts[2])
        if next_line() != "[corrections]":
            raise ModelFormatError(f"{path}: missing corrections section")
        corr_log_alpha, corr_active = {}, {}
        for b in OUTCOMES:
            parts = next_line().split("\t")
            if len(parts) != 3 or parts[0] != b:
                raise ModelFormatError(f"{path}: bad correction row")
            corr_active[b] = bool(int(parts[1]))
            corr_log_alpha[b] = float.fromhex(parts[2])
        if next_line() != "[end]":
            raise ModelFormatError(f"{path}: missing end marker")
        template_set = fields["template_set"]
        registry = PredicateRegistry(
            template_set=template_set,
            keys=keys,
            counts=counts,
            cutoff=int(fields["cutoff"]),
        )
        model = Model(
            template_set=template_set,
            registry=registry,
            abbreviations=abbreviations,
            log_alpha=log_alpha,
            corr_log_alpha=corr_log_alpha,
            corr_active=corr_active,
            C=int(fields["C"]),
            pi=float.fromhex(fields["pi"]),
            clamp=float.fromhex(fields["clamp"]),
            converged=bool(int(fields["converged"])),
            iterations=int(fields["iterations"]),
            abbrev_case_sensitive=bool(int(fields["abbrev_case_sensitive"])),
            fingerprint=fields["fingerprint"],
        )
    except (ValueError, KeyError) as exc:
        raise ModelFormatError(f"{path}: malformed model file: {exc}") from exc
    expected_fp = registry_fingerprint(registry, abbreviations, template_set)
    if expected_fp != fields["fingerprint"]:
        raise ModelFormatError(f"{path}: fingerprint mismatch (corrupt or edited file)")
    return model
