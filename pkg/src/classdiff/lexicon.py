"""Concreteness lexicon: loading, term normalization and fallback lookup."""

import math
from collections.abc import Iterable, Mapping

from .errors import EmptyLexiconError, EmptyTermError, ParseError, RangeError

__all__ = [
    "ConcretenessLexicon",
    "levenshtein",
    "load_lexicon",
    "lookup",
    "normalize_term",
]

MAX_RATING = 5.0
_MIN_STEM = 3
_ES_CONTEXT = ("s", "x", "z", "ch", "sh")


def _strip_suffix(term):
    if term.endswith("ies") and len(term) - 2 >= _MIN_STEM:
        return term[:-3] + "y"
    if term.endswith("es") and term[:-2].endswith(_ES_CONTEXT) and len(term) - 2 >= _MIN_STEM:
        return term[:-2]
    if term.endswith("s") and not term.endswith("ss") and len(term) - 1 >= _MIN_STEM:
        return term[:-1]
    return term


def normalize_term(raw):
    """Lowercase, drop all whitespace and apply a light plural stemmer.

    The suffix rules are applied until nothing changes, which makes the
    function idempotent.

    >>> normalize_term("Walk ")
    'walk'
    >>> normalize_term("parties"), normalize_term("boxes")
    ('party', 'box')
    """
    term = "".join(raw.lower().split())
    if not term:
        raise EmptyTermError(f"term {raw!r} is empty after normalization")
    while True:
        stemmed = _strip_suffix(term)
        if stemmed == term:
            return term
        term = stemmed


def levenshtein(a, b, max_distance=None):
    """Edit distance with unit costs for insert, delete and substitute.

    If ``max_distance`` is given the computation may stop early and return
    any value larger than ``max_distance`` once the bound is exceeded.
    """
    if len(a) < len(b):
        a, b = b, a
    if max_distance is not None and len(a) - len(b) > max_distance:
        return len(a) - len(b)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (ca != cb),
            ))
        if max_distance is not None and min(current) > max_distance:
            return min(current)
        previous = current
    return previous[-1]


class ConcretenessLexicon(Mapping):
    """Immutable map from normalized term to a concreteness rating in [0, 5].

    Keys given at construction are normalized; when two keys collapse onto
    the same normalized form the higher rating is kept.
    """

    def __init__(self, entries=()):
        table = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for term, rating in items:
            rating = float(rating)
            if not (0.0 <= rating <= MAX_RATING):
                raise RangeError(f"rating {rating} for {term!r} outside [0, {MAX_RATING}]")
            key = normalize_term(term)
            if key not in table or rating > table[key]:
                table[key] = rating
        self._entries = table

    def __getitem__(self, key):
        return self._entries[key]

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def __repr__(self):
        return f"ConcretenessLexicon({len(self)} entries)"


def lookup(lexicon, term):
    """Resolve ``term`` to ``(rating, match_kind)``.

    Resolution order: exact key on the lowercased, trimmed term; then the
    normalized term; then the key with the smallest edit distance to the
    normalized term, ties going to the lexicographically smallest key.
    """
    if len(lexicon) == 0:
        raise EmptyLexiconError("lexicon has no entries")
    raw = term.strip().lower()
    if raw in lexicon:
        return lexicon[raw], "exact"
    query = normalize_term(term)
    if query in lexicon:
        return lexicon[query], "stemmed"

    best_key, best_dist = None, math.inf
    for key in sorted(lexicon):
        bound = None if best_dist == math.inf else best_dist
        dist = levenshtein(query, key, max_distance=bound)
        if dist < best_dist:
            best_key, best_dist = key, dist
            if dist == 0:
                break
    return lexicon[best_key], "nearest"


def load_lexicon(lines: Iterable[str], column: int = 1) -> ConcretenessLexicon:
    """Parse a tab-separated ``term<TAB>rating`` stream.

    A first line whose rating field is not numeric is treated as a header.
    ``column`` selects the rating field for files with extra columns.
    """
    entries = []
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\r\n")
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) <= column:
            raise ParseError(f"expected at least {column + 1} tab-separated fields", line=lineno)
        term, field = fields[0], fields[column].strip()
        try:
            rating = float(field)
        except ValueError:
            if lineno == 1:
                continue
            raise ParseError(f"rating {field!r} is not a number", line=lineno) from None
        if not math.isfinite(rating) or not (0.0 <= rating <= MAX_RATING):
            raise RangeError(f"rating {rating} outside [0, {MAX_RATING}]", line=lineno)
        try:
            normalize_term(term)
        except EmptyTermError:
            raise ParseError("empty term", line=lineno) from None
        entries.append((term, rating))
    return ConcretenessLexicon(entries)
