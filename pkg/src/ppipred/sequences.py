"""Sequence and interaction-pair ingestion.

Input formats:
  * FASTA: ``>`` header lines, id = header token up to the first whitespace,
    one or more sequence lines per record (concatenated, uppercased).
  * Pairs TSV: ``idA<TAB>idB<TAB>label`` with label 0 or 1; blank lines and
    lines starting with ``#`` are ignored.

Both accept LF or CRLF line endings and ASCII/UTF-8 text.
"""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import ParseError, ValidationError
from .scales import RESIDUES

_CANONICAL = frozenset(RESIDUES)


class UnknownResiduePolicy(enum.Enum):
    """What to do with residues outside the 20-letter alphabet.

    ``error`` (default) aborts the parse; ``skip`` silently drops them.
    """

    ERROR = "error"
    SKIP = "skip"


@dataclass(frozen=True, slots=True)
class ProteinSequence:
    """A validated residue string with its identifier."""

    id: str
    residues: str

    def __post_init__(self):
        if not self.id or any(c.isspace() for c in self.id):
            raise ValidationError(f"invalid protein id {self.id!r}")
        if not self.residues:
            raise ValidationError(f"protein {self.id}: empty sequence")
        bad = set(self.residues) - _CANONICAL
        if bad:
            raise ValidationError(
                f"protein {self.id}: non-canonical residues {sorted(bad)!r}"
            )

    def __len__(self) -> int:
        return len(self.residues)


@dataclass(frozen=True, slots=True)
class InteractionRecord:
    """A labeled protein pair. Identity is unordered: (a,b) == (b,a)."""

    a: str
    b: str
    label: int

    def __post_init__(self):
        if not self.a or not self.b:
            raise ValidationError("interaction record with empty protein id")
        if self.label not in (0, 1):
            raise ValidationError(f"label must be 0 or 1, got {self.label!r}")

    def key(self) -> tuple[str, str]:
        """Canonical unordered endpoint pair (lexicographically sorted)."""
        return (self.a, self.b) if self.a <= self.b else (self.b, self.a)


def _as_text(source) -> str:
    if isinstance(source, str):
        return source
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, io.IOBase) or hasattr(source, "read"):
        data = source.read()
        return data.decode("utf-8") if isinstance(data, bytes) else data
    raise TypeError(f"cannot read from {type(source).__name__}")


def parse_fasta(
    source,
    policy: UnknownResiduePolicy = UnknownResiduePolicy.ERROR,
) -> list[ProteinSequence]:
    """Parse a FASTA document into a list of sequences.

    ``source`` may be text, bytes, or a readable file object. Lowercase
    letters are uppercased before the policy is applied. Duplicate ids,
    records left empty after policy application, and sequence data before
    the first header are errors.
    """
    text = _as_text(source)
    out: list[ProteinSequence] = []
    seen: set[str] = set()
    cur_id: str | None = None
    cur_parts: list[str] = []
    cur_line = 0

    def flush():
        if cur_id is None:
            return
        residues = "".join(cur_parts)
        if not residues:
            raise ParseError(f"record {cur_id!r} has no residues", line=cur_line)
        out.append(ProteinSequence(id=cur_id, residues=residues))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(">"):
            flush()
            header = line[1:].strip()
            pid = header.split()[0] if header else ""
            if not pid:
                raise ParseError("header with empty id", line=lineno)
            if pid in seen:
                raise ParseError(f"duplicate protein id {pid!r}", line=lineno)
            seen.add(pid)
            cur_id, cur_parts, cur_line = pid, [], lineno
            continue
        if cur_id is None:
            raise ParseError("sequence data before any '>' header", line=lineno)
        chunk = "".join(line.split()).upper()
        bad = [c for c in chunk if c not in _CANONICAL]
        if bad:
            if policy is UnknownResiduePolicy.ERROR:
                raise ParseError(
                    f"record {cur_id!r}: non-canonical residue {bad[0]!r}",
                    line=lineno,
                )
            chunk = "".join(c for c in chunk if c in _CANONICAL)
        cur_parts.append(chunk)
    flush()
    return out


def write_fasta(seqs: Iterable[ProteinSequence]) -> str:
    """Serialize sequences; re-parsing the output reproduces the input."""
    return "".join(f">{s.id}\n{s.residues}\n" for s in seqs)


def parse_pairs(source) -> list[InteractionRecord]:
    """Parse a pairs TSV into records, preserving order and multiplicity."""
    text = _as_text(source)
    out: list[InteractionRecord] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise ParseError(
                f"expected 3 tab-separated fields, got {len(fields)}", line=lineno
            )
        ida, idb, label = (f.strip() for f in fields)
        if not ida or not idb:
            raise ParseError("empty protein id", line=lineno)
        if label not in ("0", "1"):
            raise ParseError(f"label must be 0 or 1, got {label!r}", line=lineno)
        out.append(InteractionRecord(a=ida, b=idb, label=int(label)))
    return out


def write_pairs(records: Iterable[InteractionRecord], header: str = "") -> str:
    """Serialize records as pairs TSV; ``header`` lines are '#'-prefixed."""
    lines = [f"# {h}" for h in header.splitlines()] if header else []
    lines += [f"{r.a}\t{r.b}\t{r.label}" for r in records]
    return "\n".join(lines) + "\n" if lines else ""


def load_fasta(
    path: str | Path,
    policy: UnknownResiduePolicy = UnknownResiduePolicy.ERROR,
) -> dict[str, ProteinSequence]:
    """Read a FASTA file into an id -> sequence mapping (insertion-ordered)."""
    seqs = parse_fasta(Path(path).read_text(), policy=policy)
    return {s.id: s for s in seqs}


def load_pairs(path: str | Path) -> list[InteractionRecord]:
    return parse_pairs(Path(path).read_text())
