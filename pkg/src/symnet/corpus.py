"""Corpus loading and preprocessing.

Turns raw book files into cleaned, lemmatized token sequences. The
pipeline is deliberately dictionary-based and rule-based: tokenization
splits on whitespace and strips surrounding punctuation, lemmatization
is a surface-to-lemma lookup with identity fallback, and stopwords are
matched against both the surface form and the lemma. Pre-tagged input
(one ``surface<TAB>lemma`` pair per line) is supported for users who
want to plug in an external tagger.
"""

from __future__ import annotations

import csv
import re
import string
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

__all__ = [
    "Token",
    "Document",
    "PreprocessConfig",
    "BookRef",
    "load_text",
    "strip_boilerplate",
    "tokenize",
    "preprocess",
    "parse_pretagged",
    "load_document",
    "read_manifest",
    "read_stopwords",
    "read_lemma_map",
]

# Characters stripped from token boundaries. Internal occurrences
# (don't, mother-in-law) are kept.
_STRIP_CHARS = string.punctuation + "‘’“”«»‹›–—…·"

# Punctuation that ends a sentence when it trails a token.
_SENTENCE_END = ".!?…"

_START_MARKER = re.compile(r"\*\*\*\s*START OF[^\n]*?\*\*\*")
_END_MARKER = re.compile(r"\*\*\*\s*END OF[^\n]*?\*\*\*")


@dataclass(frozen=True)
class Token:
    """A single content token after preprocessing."""

    surface: str
    lemma: str
    sentence_index: int
    position: int


@dataclass
class Document:
    """One book as an ordered token sequence with an author label."""

    id: str
    author: str
    title: str
    tokens: list[Token] = field(default_factory=list)

    @property
    def lemmas(self) -> list[str]:
        return [t.lemma for t in self.tokens]

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass
class PreprocessConfig:
    """Knobs for the text-to-tokens pipeline.

    ``stopword_list`` entries are matched case-insensitively against both
    the surface form and the lemma, so inflected stopwords that the lemma
    map misses are still removed. ``lemma_map`` maps surface forms to
    lemmas; unmapped surfaces fall through unchanged.
    """

    stopword_list: frozenset[str] = frozenset()
    lemma_map: Mapping[str, str] = field(default_factory=dict)
    strip_boilerplate: bool = True
    cross_sentence_edges: bool = False
    keep_punctuation_as_boundary: bool = True

    def __post_init__(self) -> None:
        self.stopword_list = frozenset(w.lower() for w in self.stopword_list)


@dataclass(frozen=True)
class BookRef:
    """One row of a corpus manifest."""

    id: str
    author: str
    title: str
    path: Path


def load_text(path: str | Path, encoding: str = "utf-8") -> str:
    """Read a text file and normalize line endings to ``\\n``.

    Raises ``FileNotFoundError`` for missing files and
    ``UnicodeDecodeError`` (which names the offending byte offset) for
    undecodable content.
    """
    data = Path(path).read_bytes()
    text = data.decode(encoding)
    return text.replace("\r\n", "\n").replace("\r", "\n")


def strip_boilerplate(text: str) -> str:
    """Cut header/footer boilerplate delimited by ``*** START OF ...``
    and ``*** END OF ...`` marker lines.

    Public-domain book files carry licensing text around the actual
    novel; only the text strictly between the two markers is kept. If
    either marker is missing the input is returned unchanged.
    """
    start = _START_MARKER.search(text)
    if start is None:
        return text
    end = _END_MARKER.search(text, start.end())
    if end is None:
        return text
    return text[start.end() : end.start()]


def tokenize(text: str, sentence_boundaries: bool = True) -> list[tuple[str, int]]:
    """Split text into lowercase ``(surface, sentence_index)`` pairs.

    Tokens are whitespace-separated chunks with surrounding punctuation
    stripped; hyphens and apostrophes inside a word survive. A trailing
    ``.``, ``!`` or ``?`` on a chunk closes the current sentence. Chunks
    that are pure punctuation are dropped (but still close a sentence
    when they contain a terminator).
    """
    out: list[tuple[str, int]] = []
    sentence = 0
    for chunk in text.split():
        surface = chunk.strip(_STRIP_CHARS).lower()
        if surface:
            out.append((surface, sentence))
        if sentence_boundaries:
            trailing = chunk[len(chunk.rstrip(_STRIP_CHARS)) :]
            if any(c in _SENTENCE_END for c in trailing):
                sentence += 1
    return out


def preprocess(text: str, config: PreprocessConfig | None = None) -> list[Token]:
    """Run the full pipeline: tokenize, lemmatize, drop stopwords.

    Stopwords are tested against the surface form and the lemma.
    Positions are reassigned contiguously after removal; sentence
    indices are kept from tokenization.
    """
    config = config or PreprocessConfig()
    if config.strip_boilerplate:
        text = strip_boilerplate(text)
    pairs = tokenize(text, config.keep_punctuation_as_boundary)
    return _assemble(pairs, config)


def parse_pretagged(text: str, config: PreprocessConfig | None = None) -> list[Token]:
    """Parse externally tagged input, one ``surface<TAB>lemma`` per line.

    Blank lines mark sentence boundaries. Stopword removal and position
    assignment behave exactly as in :func:`preprocess`; the lemma map is
    not applied (the external tagger already decided the lemma).
    """
    config = config or PreprocessConfig()
    pairs: list[tuple[str, str, int]] = []
    sentence = 0
    saw_token = False
    for lineno, line in enumerate(text.split("\n"), start=1):
        line = line.strip()
        if not line:
            if saw_token:
                sentence += 1
                saw_token = False
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise ValueError(f"line {lineno}: expected 'surface<TAB>lemma', got {line!r}")
        pairs.append((parts[0].strip().lower(), parts[1].strip().lower(), sentence))
        saw_token = True

    tokens: list[Token] = []
    stop = config.stopword_list
    for surface, lemma, sent in pairs:
        if surface in stop or lemma in stop:
            continue
        tokens.append(Token(surface, lemma, sent, len(tokens)))
    return tokens


def _assemble(pairs: Iterable[tuple[str, int]], config: PreprocessConfig) -> list[Token]:
    lemma_map = config.lemma_map
    stop = config.stopword_list
    tokens: list[Token] = []
    for surface, sent in pairs:
        lemma = lemma_map.get(surface, surface).lower()
        if not lemma:
            lemma = surface
        if surface in stop or lemma in stop:
            continue
        tokens.append(Token(surface, lemma, sent, len(tokens)))
    return tokens


def load_document(ref: BookRef, config: PreprocessConfig | None = None,
                  encoding: str = "utf-8", pretagged: bool = False) -> Document:
    """Load one manifest entry into a preprocessed :class:`Document`."""
    text = load_text(ref.path, encoding)
    if pretagged:
        tokens = parse_pretagged(text, config)
    else:
        tokens = preprocess(text, config)
    return Document(id=ref.id, author=ref.author, title=ref.title, tokens=tokens)


def read_manifest(path: str | Path) -> list[BookRef]:
    """Read a corpus manifest CSV with header ``id,author,title,path``.

    Relative book paths are resolved against the manifest's directory.
    """
    path = Path(path)
    base = path.parent
    refs: list[BookRef] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        required = {"id", "author", "title", "path"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise ValueError(f"manifest {path} must have columns id,author,title,path")
        for row in reader:
            book_path = Path(row["path"])
            if not book_path.is_absolute():
                book_path = base / book_path
            refs.append(BookRef(row["id"], row["author"], row["title"], book_path))
    if not refs:
        raise ValueError(f"manifest {path} lists no books")
    return refs


def read_stopwords(path: str | Path) -> frozenset[str]:
    """Read a stopword list, one word per line; ``#`` starts a comment."""
    words = set()
    for line in load_text(path).split("\n"):
        word = line.split("#", 1)[0].strip().lower()
        if word:
            words.add(word)
    return frozenset(words)


def read_lemma_map(path: str | Path) -> dict[str, str]:
    """Read a ``surface<TAB>lemma`` mapping file."""
    mapping: dict[str, str] = {}
    for lineno, line in enumerate(load_text(path).split("\n"), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        surface, sep, lemma = line.partition("\t")
        surface, lemma = surface.strip().lower(), lemma.strip().lower()
        if not sep or not surface or not lemma:
            raise ValueError(f"{path}:{lineno}: expected 'surface<TAB>lemma', got {line!r}")
        mapping[surface] = lemma
    return mapping
