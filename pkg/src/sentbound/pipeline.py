"""End-to-end glue: corpus -> trained model, and model -> segmented text."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import features, maxent
from .candidates import Candidate, scan, tokenize_with_positions
from .corpus import (
    AnnotatedCorpus,
    LabeledCandidateSet,
    induce_abbreviations,
    label_candidates,
)
from .features import Extractor, ResourceLexicons, make_extractor
from .maxent import Model


def extractor_for_model(
    model: Model, lexicons: Optional[ResourceLexicons] = None
) -> Extractor:
    """Rebuild the extractor a model was trained with. Portable models carry
    their abbreviation list; best models need the lexicons back."""
    if model.template_set == "best":
        return make_extractor("best", lexicons=lexicons)
    return make_extractor("portable", abbreviations=model.abbreviation_set())


def events_from_labeled(
    labeled: LabeledCandidateSet,
    registry: features.PredicateRegistry,
    extractor: Extractor,
) -> list[maxent.TrainingEvent]:
    raw = [
        (features.encode(cand, registry, extractor), label)
        for cand, label in labeled.candidates
    ]
    return maxent.merge_events(raw)


def train_model(
    corpus: AnnotatedCorpus,
    template_set: str = "portable",
    *,
    cutoff: int = 1,
    max_iters: int = maxent.DEFAULT_MAX_ITERS,
    tolerance: float = maxent.DEFAULT_TOLERANCE,
    lexicons: Optional[ResourceLexicons] = None,
    abbrev_case_sensitive: bool = True,
) -> tuple[Model, LabeledCandidateSet]:
    """Label the corpus, build resources and registry, and run GIS."""
    labeled = label_candidates(corpus)
    if template_set == "portable":
        abbrevs = induce_abbreviations(labeled, case_sensitive=abbrev_case_sensitive)
        extractor = make_extractor("portable", abbreviations=abbrevs)
        abbrev_entries = tuple(abbrevs.sorted())
    elif template_set == "best":
        if lexicons is None:
            raise features.FeatureError("best template set requires resource lexicons")
        extractor = make_extractor("best", lexicons=lexicons)
        abbrev_entries = ()
    else:
        raise features.FeatureError(f"unknown template set {template_set!r}")
    registry = features.build_registry(labeled, extractor, template_set, cutoff=cutoff)
    events = events_from_labeled(labeled, registry, extractor)
    model = maxent.train_gis(
        events,
        registry,
        template_set=template_set,
        abbreviations=abbrev_entries,
        abbrev_case_sensitive=abbrev_case_sensitive,
        max_iters=max_iters,
        tolerance=tolerance,
    )
    return model, labeled


def make_classifier(
    model: Model, lexicons: Optional[ResourceLexicons] = None
) -> Callable[[Candidate], bool]:
    """Candidate -> is-boundary decision function for a trained model."""
    extractor = extractor_for_model(model, lexicons)

    def classify_candidate(cand: Candidate) -> bool:
        active = features.encode(cand, model.registry, extractor)
        return maxent.classify(model, active)

    return classify_candidate


@dataclass
class Segmentation:
    sentences: list[str]
    boundary_offsets: list[int]  # character offsets of boundary marks


def segment_text(
    model: Model, text: str, lexicons: Optional[ResourceLexicons] = None
) -> Segmentation:
    """Classify every candidate in raw text; a yes splits after the mark."""
    classify_candidate = make_classifier(model, lexicons)
    tokens, positions = tokenize_with_positions(text)
    offsets = [
        c.stream_position
        for c in scan(tokens, positions=positions)
        if classify_candidate(c)
    ]
    sentences = []
    start = 0
    for off in offsets:
        chunk = " ".join(text[start : off + 1].split())
        if chunk:
            sentences.append(chunk)
        start = off + 1
    tail = " ".join(text[start:].split())
    if tail:
        sentences.append(tail)
    return Segmentation(sentences=sentences, boundary_offsets=offsets)


def byte_offsets(text: str, char_offsets: list[int], encoding: str = "utf-8") -> list[int]:
    """Convert character offsets to byte offsets under the given encoding."""
    out = []
    prev_char, prev_byte = 0, 0
    for off in char_offsets:
        prev_byte += len(text[prev_char:off].encode(encoding))
        prev_char = off
        out.append(prev_byte)
    return out
