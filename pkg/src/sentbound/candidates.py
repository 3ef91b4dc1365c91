"""Candidate extraction: one record per occurrence of '.', '?' or '!' in a token stream."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence

BOUNDARY_MARKS = frozenset(".?!")

# Sentinel for "no word here" (stream edges). None cannot collide with a real
# token, which is always a non-empty string.
NO_WORD: Optional[str] = None

_TOKEN_RE = re.compile(r"\S+")


@dataclass(frozen=True)
class Candidate:
    """One occurrence of a potential sentence-boundary mark inside a token.

    prefix/suffix are the parts of the token before/after this occurrence;
    prev_word/next_word are the adjacent tokens (None at stream edges);
    stream_position is the global character offset of the mark.
    """

    mark: str
    token: str
    offset_in_token: int
    prefix: str
    suffix: str
    prev_word: Optional[str]
    next_word: Optional[str]
    stream_position: int

    @property
    def token_final(self) -> bool:
        return self.offset_in_token == len(self.token) - 1


def neighbors(tokens: Sequence[str], index: int) -> tuple[Optional[str], Optional[str]]:
    """Adjacent tokens at ``index``; NO_WORD beyond stream edges.

    Context window is exactly one token on each side.
    """
    if not 0 <= index < len(tokens):
        raise IndexError(f"token index {index} out of range for {len(tokens)} tokens")
    prev_word = tokens[index - 1] if index > 0 else NO_WORD
    next_word = tokens[index + 1] if index < len(tokens) - 1 else NO_WORD
    return prev_word, next_word


def scan(
    tokens: Sequence[str],
    positions: Optional[Sequence[int]] = None,
) -> list[Candidate]:
    """Emit one Candidate per occurrence of '.', '?' or '!', left to right.

    ``positions`` gives the character offset of each token in the original
    text; when omitted, tokens are assumed to be single-space separated.
    """
    if positions is None:
        positions = []
        offset = 0
        for tok in tokens:
            positions.append(offset)
            offset += len(tok) + 1
    out: list[Candidate] = []
    for i, tok in enumerate(tokens):
        if not tok:
            raise ValueError("empty token in stream")
        prev_word, next_word = neighbors(tokens, i)
        for j, ch in enumerate(tok):
            if ch in BOUNDARY_MARKS:
                out.append(
                    Candidate(
                        mark=ch,
                        token=tok,
                        offset_in_token=j,
                        prefix=tok[:j],
                        suffix=tok[j + 1 :],
                        prev_word=prev_word,
                        next_word=next_word,
                        stream_position=positions[i] + j,
                    )
                )
    return out


def tokenize_with_positions(text: str) -> tuple[list[str], list[int]]:
    """Split raw text into whitespace-delimited tokens with character offsets."""
    tokens, positions = [], []
    for m in _TOKEN_RE.finditer(text):
        tokens.append(m.group())
        positions.append(m.start())
    return tokens, positions
