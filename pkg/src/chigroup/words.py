"""Free words, presentations and their text format.

Commutators are ``[u, v] = u^-1 v^-1 u v`` and conjugates ``u^t = t^-1 u t``;
every other module inherits these conventions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Letter = tuple[int, int]


class WordError(ValueError):
    pass


class AlphabetMismatch(WordError):
    pass


class PresentationSyntaxError(WordError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _free_reduce(letters: Iterable[Letter], rank: int) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for gen, sign in letters:
        if not 0 <= gen < rank:
            raise WordError(f"unknown generator index {gen}")
        if sign not in (1, -1):
            raise WordError(f"exponent sign must be +1 or -1, got {sign}")
        if out and out[-1][0] == gen and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((gen, sign))
    return tuple(out)


@dataclass(frozen=True)
class GeneratorSymbol:
    name: str
    index: int


@dataclass(frozen=True)
class Word:
    """A freely reduced word over the generator names ``names``.

    The constructor reduces its input, so every ``Word`` in circulation is
    already canonical and ``==`` is free-group equality.
    """

    letters: tuple[Letter, ...]
    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "letters", _free_reduce(self.letters, len(self.names)))

    @classmethod
    def identity(cls, names: Sequence[str]) -> "Word":
        return cls((), tuple(names))

    @classmethod
    def generator(cls, names: Sequence[str], index: int, sign: int = 1) -> "Word":
        return cls(((index, sign),), tuple(names))

    @property
    def rank(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def _check(self, other: "Word") -> None:
        if self.names != other.names:
            raise AlphabetMismatch(f"alphabets differ: {self.names} vs {other.names}")

    def __mul__(self, other: "Word") -> "Word":
        self._check(other)
        return Word(self.letters + other.letters, self.names)

    def inverse(self) -> "Word":
        return Word(tuple((g, -s) for g, s in reversed(self.letters)), self.names)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k), self.names)

    def exponent_sums(self) -> list[int]:
        sums = [0] * self.rank
        for g, s in self.letters:
            sums[g] += s
        return sums

    def substitute(self, images: Sequence["Word"]) -> "Word":
        """Replace generator ``i`` by ``images[i]`` (all images share one alphabet)."""
        if len(images) != self.rank:
            raise WordError(f"need {self.rank} images, got {len(images)}")
        if not images:
            return self
        target = images[0].names
        out: list[Letter] = []
        for g, s in self.letters:
            img = images[g]
            if img.names != target:
                raise AlphabetMismatch("substitution images use different alphabets")
            out.extend(img.letters if s == 1 else img.inverse().letters)
        return Word(tuple(out), target)

    def format(self) -> str:
        if not self.letters:
            return "1"
        atoms = []
        i = 0
        while i < len(self.letters):
            j = i
            while j < len(self.letters) and self.letters[j] == self.letters[i]:
                j += 1
            gen, sign = self.letters[i]
            k = (j - i) * sign
            atoms.append(self.names[gen] if k == 1 else f"{self.names[gen]}^{k}")
            i = j
        return "*".join(atoms)

    def __str__(self) -> str:
        return self.format()


def reduce(letters: Iterable[Letter], names: Sequence[str]) -> Word:
    return Word(tuple(letters), tuple(names))


def commutator(u: Word, v: Word) -> Word:
    u._check(v)
    return u.inverse() * v.inverse() * u * v


def conjugate(u: Word, t: Word) -> Word:
    u._check(t)
    return t.inverse() * u * t


def left_normed_commutator(*words: Word) -> Word:
    acc = words[0]
    for w in words[1:]:
        acc = commutator(acc, w)
    return acc


@dataclass(frozen=True)
class Presentation:
    generators: tuple[GeneratorSymbol, ...]
    relators: tuple[Word, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        seen = set()
        for i, sym in enumerate(self.generators):
            if sym.index != i:
                raise WordError(f"generator {sym.name!r} has index {sym.index}, expected {i}")
            if not sym.name or sym.name in seen:
                raise WordError(f"generator names must be unique and nonempty: {sym.name!r}")
            seen.add(sym.name)
        for r in self.relators:
            if r.names != self.names:
                raise AlphabetMismatch(f"relator {r} is not over {self.names}")

    @classmethod
    def from_names(cls, names: Sequence[str], relators: Iterable[Word] = ()) -> "Presentation":
        return cls(tuple(GeneratorSymbol(n, i) for i, n in enumerate(names)), tuple(relators))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def gen(self, i: int, sign: int = 1) -> Word:
        return Word.generator(self.names, i, sign)

    def gens(self) -> list[Word]:
        return [self.gen(i) for i in range(self.rank)]

    def word(self, text: str) -> Word:
        """Parse a single word over this presentation's generators."""
        words = _RelatorParser(text, self.names, 1).parse_all()
        if len(words) != 1:
            raise WordError(f"expected one word, got {len(words)} in {text!r}")
        return words[0]


# ---------------------------------------------------------------------------
# text format

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"[+-]?\d+")


class _RelatorParser:
    def __init__(self, text: str, names: Sequence[str], line: int, col0: int = 1,
                 positions: list[tuple[int, int]] | None = None):
        self.text = text
        self.names = tuple(names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.by_length = sorted(self.names, key=len, reverse=True)
        self.pos = 0
        # (line, column) for every character, so errors point into the file
        self.positions = positions or [(line, col0 + k) for k in range(len(text) + 1)]

    def error(self, message: str):
        line, col = self.positions[min(self.pos, len(self.positions) - 1)]
        raise PresentationSyntaxError(message, line, col)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self):
        while self.peek() and self.peek().isspace():
            self.pos += 1

    def parse_all(self) -> list[Word]:
        words = []
        while True:
            self.skip_ws()
            if not self.peek():
                return words
            words.append(self.parse_word(nested=False))

    def parse_word(self, nested: bool) -> Word:
        w = Word.identity(self.names)
        count = 0
        while True:
            if nested:
                self.skip_ws()
            c = self.peek()
            if c == "*" and count:
                self.pos += 1
                if nested:
                    self.skip_ws()
                c = self.peek()
            if not c or c in ",)]" or c.isspace():
                if not count:
                    self.error("expected a word")
                return w
            w = w * self.parse_atom()
            count += 1

    def parse_atom(self) -> Word:
        c = self.peek()
        if c == "[":
            self.pos += 1
            parts = [self.parse_word(nested=True)]
            self.skip_ws()
            while self.peek() == ",":
                self.pos += 1
                parts.append(self.parse_word(nested=True))
                self.skip_ws()
            if self.peek() != "]":
                self.error("expected ']'")
            self.pos += 1
            if len(parts) < 2:
                self.error("commutator needs at least two entries")
            base = left_normed_commutator(*parts)
        elif c == "(":
            self.pos += 1
            base = self.parse_word(nested=True)
            self.skip_ws()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
        elif c == "1":
            self.pos += 1
            base = Word.identity(self.names)
        else:
            base = self.parse_name()
        if self.peek() == "^":
            self.pos += 1
            m = _INT.match(self.text, self.pos)
            if not m:
                self.error("expected an integer exponent after '^'")
            self.pos = m.end()
            base = base ** int(m.group())
        return base

    def parse_name(self) -> Word:
        for name in self.by_length:
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                return Word.generator(self.names, self.index[name])
        m = _IDENT.match(self.text, self.pos)
        if m:
            self.error(f"undeclared generator {m.group()!r}")
        self.error(f"unexpected character {self.peek()!r}")


def parse_presentation(text: str) -> Presentation:
    """Parse the line-oriented ``generators:`` / ``relators:`` format.

    Lines without a key continue the previous key, ``#`` starts a comment.
    """
    sections: dict[str, list[tuple[str, int, int]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = re.match(r"\s*([A-Za-z_]+)\s*:", line)
        if m:
            key = m.group(1)
            if key not in ("generators", "relators"):
                raise PresentationSyntaxError(f"unknown section {key!r}", lineno, m.start(1) + 1)
            if key in sections:
                raise PresentationSyntaxError(f"duplicate section {key!r}", lineno, m.start(1) + 1)
            current = key
            sections[key] = [(line[m.end():], lineno, m.end() + 1)]
        elif current is None:
            raise PresentationSyntaxError("expected 'generators:'", lineno, 1)
        else:
            sections[current].append((line, lineno, 1))

    if "generators" not in sections:
        raise PresentationSyntaxError("missing 'generators:' line", 1, 1)
    names: list[str] = []
    for chunk, lineno, col in sections["generators"]:
        for m in re.finditer(r"\S+", chunk):
            if not _IDENT.fullmatch(m.group()):
                raise PresentationSyntaxError(f"bad generator name {m.group()!r}", lineno, col + m.start())
            if m.group() in names:
                raise PresentationSyntaxError(f"duplicate generator {m.group()!r}", lineno, col + m.start())
            names.append(m.group())
    if not names:
        line = sections["generators"][0][1]
        raise PresentationSyntaxError("empty generator list", line, 1)

    relators: list[Word] = []
    if "relators" in sections:
        text_parts, positions = [], []
        for chunk, lineno, col in sections["relators"]:
            text_parts.append(chunk + "\n")
            positions.extend((lineno, col + k) for k in range(len(chunk) + 1))
        joined = "".join(text_parts)
        positions.append(positions[-1])
        relators = _RelatorParser(joined, names, 0, positions=positions).parse_all()
    return Presentation.from_names(names, relators)


def format_presentation(p: Presentation) -> str:
    rels = " ".join(r.format() for r in p.relators)
    return f"generators: {' '.join(p.names)}\nrelators: {rels}".rstrip() + "\n"
