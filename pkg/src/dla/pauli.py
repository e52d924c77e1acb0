"""
Pauli strings in symplectic form and exact real-rational combinations of them.

A string with masks (x, z) stands for i^popcount(x & z) X^x Z^z, which is
the Hermitian tensor product of single-qubit I, X, Y, Z. Character j of a
label acts on qubit j (bit j of a basis index).
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Tuple, Union

from ..utils.errors import DimensionError, GeneratorParseError

_CHAR_MASKS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_TERM = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)\s*\*\s*([IXYZ]+)\s*$")


def popcount(value: int) -> int:
    return bin(value).count("1")


@dataclass(frozen=True, order=True)
class PauliString:
    x: int
    z: int
    n: int

    def __post_init__(self) -> None:
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise DimensionError(f"masks ({self.x}, {self.z}) do not fit in {self.n} qubits")

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        x = z = 0
        for j, char in enumerate(label):
            if char not in _CHAR_MASKS:
                raise ValueError(f"unknown Pauli character {char!r}")
            bx, bz = _CHAR_MASKS[char]
            x |= bx << j
            z |= bz << j
        return cls(x, z, len(label))

    @classmethod
    def single(cls, n: int, site: int, char: str) -> "PauliString":
        label = ["I"] * n
        label[site] = char
        return cls.from_label("".join(label))

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(0, 0, n)

    @property
    def index(self) -> int:
        """Coordinate index x | z << n, the position in the 4**n Pauli basis."""
        return self.x | (self.z << self.n)

    @property
    def y_count(self) -> int:
        return popcount(self.x & self.z)

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def label(self) -> str:
        chars = {v: c for c, v in _CHAR_MASKS.items()}
        return "".join(chars[((self.x >> j) & 1, (self.z >> j) & 1)] for j in range(self.n))

    def commutes_with(self, other: "PauliString") -> bool:
        return (popcount(self.x & other.z) + popcount(self.z & other.x)) % 2 == 0

    def product(self, other: "PauliString") -> Tuple[int, "PauliString"]:
        """Return (e, R) with self * other = i**e * R."""
        if self.n != other.n:
            raise DimensionError(f"cannot multiply {self.n}- and {other.n}-qubit strings")
        result = PauliString(self.x ^ other.x, self.z ^ other.z, self.n)
        e = (self.y_count + other.y_count - result.y_count + 2 * popcount(self.z & other.x)) % 4
        return e, result

    def __str__(self) -> str:
        return self.label()


class PauliElement:
    """Finite real combination of Pauli strings with exact rational coefficients."""

    def __init__(self, n: int, terms: Mapping[PauliString, Union[int, Fraction]] = ()):
        self.n = n
        self.terms: Dict[PauliString, Fraction] = {}
        for pauli, coeff in dict(terms).items():
            if pauli.n != n:
                raise DimensionError(f"{pauli.n}-qubit string in a {n}-qubit element")
            coeff = Fraction(coeff)
            if coeff:
                self.terms[pauli] = coeff

    @classmethod
    def from_labels(cls, pairs: Iterable[Tuple[Union[int, Fraction], str]]) -> "PauliElement":
        pairs = list(pairs)
        if not pairs:
            raise ValueError("need at least one term to infer the qubit count")
        n = len(pairs[0][1])
        element = cls(n)
        for coeff, label in pairs:
            element = element + cls(n, {PauliString.from_label(label): Fraction(coeff)})
        return element

    def is_zero(self) -> bool:
        return not self.terms

    def traceless(self) -> "PauliElement":
        return PauliElement(self.n, {p: c for p, c in self.terms.items() if not p.is_identity()})

    def scaled(self, factor: Union[int, Fraction]) -> "PauliElement":
        return PauliElement(self.n, {p: c * factor for p, c in self.terms.items()})

    def __add__(self, other: "PauliElement") -> "PauliElement":
        if other.n != self.n:
            raise DimensionError(f"cannot add {self.n}- and {other.n}-qubit elements")
        merged = dict(self.terms)
        for p, c in other.terms.items():
            merged[p] = merged.get(p, Fraction(0)) + c
        return PauliElement(self.n, merged)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PauliElement) and self.n == other.n and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"PauliElement({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c} * {p.label()}" for p, c in sorted(self.terms.items()))


def parse_element(text: str, line_number: int = 1) -> PauliElement:
    """Parse ``coeff * WORD [+ coeff * WORD ...]``, for example ``3/2 * XIZ + -1 * ZZI``."""
    pairs = []
    for chunk in re.split(r"\s\+\s", text.strip()):
        match = _TERM.match(chunk)
        if not match:
            raise GeneratorParseError(f"cannot parse term {chunk.strip()!r}", line_number)
        pairs.append((Fraction(match.group(1)), match.group(2)))
    if len({len(label) for _, label in pairs}) != 1:
        raise GeneratorParseError("terms act on different qubit counts", line_number)
    return PauliElement.from_labels(pairs)


def read_generator_file(path: Union[str, Path]) -> List[PauliElement]:
    """One element per line; blank lines and ``#`` comments are skipped."""
    elements = []
    for line_number, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if content:
            elements.append(parse_element(content, line_number))
    if len({e.n for e in elements}) > 1:
        raise GeneratorParseError("generators act on different qubit counts", len(elements))
    return elements
