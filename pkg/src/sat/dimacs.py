"""
Extended DIMACS reader and writer.

Besides the standard ``p cnf <n> <m>`` header and zero-terminated clause
lines, three comment lines are understood:

    c mode one-in-k     positive 1-in-k semantics (absent means k-SAT)
    c seed <u64>        generator seed of the instance
    c k <2|3>           clause arity, needed for instances without clauses
"""

import logging
from pathlib import Path
from typing import List, Optional, Tuple, Union

from ..utils.errors import DimacsParseError, QptlabError
from .instance import Clause, Mode, SatInstance

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def format_dimacs(inst: SatInstance) -> str:
    lines = ["c qptlab instance"]
    if inst.mode is Mode.ONE_IN_K:
        lines.append("c mode one-in-k")
    if inst.seed is not None:
        lines.append(f"c seed {inst.seed}")
    lines.append(f"c k {inst.k}")
    lines.append(f"p cnf {inst.n} {inst.m}")
    for clause in inst.clauses:
        lits = " ".join(str((v + 1) * s) for v, s in clause.literals)
        lines.append(f"{lits} 0")
    return "\n".join(lines) + "\n"


def write_dimacs(inst: SatInstance, path: PathLike) -> Path:
    path = Path(path)
    path.write_text(format_dimacs(inst), encoding="utf-8")
    logger.debug(f"Wrote {inst.m} clauses to {path}")
    return path


def parse_dimacs(text: str) -> SatInstance:
    mode = Mode.KSAT
    seed: Optional[int] = None
    k: Optional[int] = None
    header: Optional[Tuple[int, int]] = None
    raw: List[Tuple[int, List[int]]] = []
    last_line = 0

    for line_number, line in enumerate(text.splitlines(), start=1):
        last_line = line_number
        tokens = line.split()
        if not tokens or tokens[0] == "%":
            continue
        if tokens[0] == "c":
            if tokens[1:3] == ["mode", "one-in-k"]:
                mode = Mode.ONE_IN_K
            elif len(tokens) == 3 and tokens[1] == "seed":
                seed = _parse_int(tokens[2], line_number)
            elif len(tokens) == 3 and tokens[1] == "k":
                k = _parse_int(tokens[2], line_number)
            continue
        if tokens[0] == "p":
            if header is not None:
                raise DimacsParseError("duplicate p line", line_number)
            if len(tokens) != 4 or tokens[1] != "cnf":
                raise DimacsParseError(f"malformed header: {line.strip()!r}", line_number)
            header = (_parse_int(tokens[2], line_number), _parse_int(tokens[3], line_number))
            continue
        if header is None:
            raise DimacsParseError("clause before the p cnf header", line_number)
        values = [_parse_int(t, line_number) for t in tokens]
        if values[-1] != 0 or 0 in values[:-1]:
            raise DimacsParseError("clause line must hold one clause terminated by 0", line_number)
        raw.append((line_number, values[:-1]))

    if header is None:
        raise DimacsParseError("missing p cnf header", last_line + 1)
    n, m = header
    if len(raw) != m:
        raise DimacsParseError(f"header announces {m} clauses, found {len(raw)}", last_line + 1)
    if k is None:
        k = len(raw[0][1]) if raw else 3

    clauses = []
    for line_number, lits in raw:
        if len(lits) != k:
            raise DimacsParseError(f"clause arity {len(lits)} differs from k={k}", line_number)
        for lit in lits:
            if not 1 <= abs(lit) <= n:
                raise DimacsParseError(f"literal {lit} out of range for n={n}", line_number)
        try:
            clauses.append(Clause.of((abs(lit) - 1, 1 if lit > 0 else -1) for lit in lits))
        except QptlabError as e:
            raise DimacsParseError(str(e), line_number) from e
        if mode is Mode.ONE_IN_K and any(lit < 0 for lit in lits):
            raise DimacsParseError("negative literal in a one-in-k instance", line_number)

    try:
        return SatInstance(n=n, k=k, mode=mode, clauses=tuple(clauses), seed=seed)
    except QptlabError as e:
        raise DimacsParseError(str(e), 1) from e


def read_dimacs(path: PathLike) -> SatInstance:
    return parse_dimacs(Path(path).read_text(encoding="utf-8"))


def _parse_int(token: str, line_number: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise DimacsParseError(f"expected an integer, got {token!r}", line_number)
