"""Labeled news corpus: schema, cleanup, CSV persistence and splitting."""

from __future__ import annotations

import csv
import math
import random
import sys
from dataclasses import dataclass, field, replace
from enum import IntEnum
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import (
    DatasetTooSmall,
    EmptyDataset,
    InvalidRatio,
    IoFailure,
    MalformedHeader,
    MissingFile,
    UnlabeledRecord,
)
from .features import word_count

CSV_COLUMNS = ("id", "word_count", "title", "text", "label", "origin")
REQUIRED_COLUMNS = ("title", "text", "label")
# pandas dumps its index either unnamed or as "Unnamed: 0"
_ID_COLUMNS = ("id", "Unnamed: 0", "")

SEED_ORIGIN = "seed-corpus"

csv.field_size_limit(min(sys.maxsize, 2**31 - 1))


class Label(IntEnum):
    FAKE = 0
    REAL = 1

    @classmethod
    def parse(cls, value) -> Optional["Label"]:
        """Decode a label, returning None for anything unrecognised.

        Strings are trimmed and compared case-insensitively; the integer
        codes 0 and 1 are accepted as well.
        """
        if isinstance(value, Label):
            return value
        if isinstance(value, (int,)) and not isinstance(value, bool):
            return cls(value) if value in (0, 1) else None
        if isinstance(value, str):
            key = value.strip().upper()
            if key in cls.__members__:
                return cls[key]
            if key in ("0", "1"):
                return cls(int(key))
        return None


def ingested_origin(url: str) -> str:
    return f"ingested({url})"


def predicted_origin(url: str) -> str:
    return f"predicted({url})"


@dataclass(frozen=True)
class NewsRecord:
    id: str
    title: str
    text: str
    label: Optional[Label] = None
    origin: str = SEED_ORIGIN
    word_count: int = field(default=0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "id", str(self.id))
        object.__setattr__(self, "label", Label.parse(self.label))
        object.__setattr__(self, "title", self.title or "")
        object.__setattr__(self, "text", self.text or "")
        object.__setattr__(self, "word_count", word_count(self.text))

    @property
    def document(self) -> str:
        """Title and body joined, the unit fed to the vectorizer."""
        return f"{self.title} {self.text}"


@dataclass(frozen=True)
class Dataset:
    records: tuple = ()

    def __post_init__(self):
        records = tuple(self.records)
        object.__setattr__(self, "records", records)
        seen = set()
        for rec in records:
            if rec.id in seen:
                raise ValueError(f"duplicate record id {rec.id!r}")
            seen.add(rec.id)

    @property
    def size(self) -> int:
        return len(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[NewsRecord]:
        return iter(self.records)

    def __getitem__(self, i):
        return self.records[i]

    @property
    def ids(self) -> list:
        return [r.id for r in self.records]

    @property
    def labels(self) -> list:
        return [r.label for r in self.records]

    @property
    def documents(self) -> list:
        return [r.document for r in self.records]

    def label_counts(self) -> dict:
        counts = {Label.FAKE: 0, Label.REAL: 0}
        for r in self.records:
            if r.label is not None:
                counts[r.label] += 1
        return counts


@dataclass(frozen=True)
class SplitPair:
    train: Dataset
    test: Dataset
    seed: int
    ratio: float


def _fresh_ids(taken: set) -> Iterator[str]:
    numeric = [int(i) for i in taken if i.isdigit()]
    n = max(numeric) + 1 if numeric else len(taken)
    while True:
        if str(n) not in taken:
            yield str(n)
        n += 1


def load_csv(path: Union[str, Path]) -> Dataset:
    path = Path(path)
    if not path.is_file():
        raise MissingFile(f"no such file: {path}")
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None:
                raise MalformedHeader(f"{path}: empty file")
            missing = [c for c in REQUIRED_COLUMNS if c not in header]
            if missing:
                raise MalformedHeader(f"{path}: missing columns {missing}")
            col = {name: i for i, name in enumerate(header)}
            id_col = next((col[c] for c in _ID_COLUMNS if c in col), None)
            origin_col = col.get("origin")

            records = []
            ids = set()
            pending = []
            for n, row in enumerate(reader):
                if len(row) != len(header):
                    continue  # mismatched field count
                rid = row[id_col] if id_col is not None else str(n)
                if rid in ids or rid == "":
                    pending.append(len(records))
                    rid = ""
                ids.add(rid)
                records.append(
                    NewsRecord(
                        id=rid,
                        title=row[col["title"]],
                        text=row[col["text"]],
                        label=row[col["label"]],
                        origin=(row[origin_col] or SEED_ORIGIN) if origin_col is not None else SEED_ORIGIN,
                    )
                )
    except UnicodeDecodeError as exc:
        raise IoFailure(f"{path}: not UTF-8 ({exc})") from exc
    except OSError as exc:
        raise IoFailure(f"{path}: {exc}") from exc

    if pending:
        ids.discard("")
        fresh = _fresh_ids(ids)
        for i in pending:
            new_id = next(fresh)
            ids.add(new_id)
            records[i] = replace(records[i], id=new_id)

    dataset = clean(Dataset(tuple(records)))
    if dataset.size == 0:
        raise EmptyDataset(f"{path}: no valid rows")
    return dataset


def clean(dataset: Dataset, require_label: bool = True) -> Dataset:
    """Drop rows with blank text or (when ``require_label``) no valid label."""
    kept = [
        r for r in dataset.records
        if r.text.strip() and (r.label is not None or not require_label)
    ]
    return Dataset(tuple(kept))


def split(dataset: Dataset, ratio: float = 0.8, seed: int = 0) -> SplitPair:
    if not 0.0 < ratio < 1.0:
        raise InvalidRatio(f"ratio must lie in (0, 1), got {ratio}")
    n = dataset.size
    if n < 2:
        raise DatasetTooSmall(f"need at least 2 records to split, got {n}")
    order = list(range(n))
    random.Random(seed).shuffle(order)
    # guard against ratio*n landing a hair under an integer
    n_train = math.floor(ratio * n + 1e-9)
    train = Dataset(tuple(dataset.records[i] for i in order[:n_train]))
    test = Dataset(tuple(dataset.records[i] for i in order[n_train:]))
    return SplitPair(train=train, test=test, seed=seed, ratio=ratio)


def append_records(dataset: Dataset, new: Sequence[NewsRecord]) -> Dataset:
    for rec in new:
        if rec.label is None:
            raise UnlabeledRecord(f"record {rec.id!r} has no label")
    taken = set(dataset.ids)
    fresh = None
    appended = []
    for rec in new:
        if rec.id in taken or rec.id == "":
            fresh = fresh or _fresh_ids(taken)
            rec = replace(rec, id=next(fresh))
        taken.add(rec.id)
        appended.append(rec)
    return Dataset(dataset.records + tuple(appended))


def save_csv(dataset: Dataset, path: Union[str, Path]) -> None:
    path = Path(path)
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for r in dataset.records:
                writer.writerow([
                    r.id,
                    r.word_count,
                    r.title,
                    r.text,
                    "" if r.label is None else r.label.name,
                    r.origin,
                ])
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def records_from(items: Iterable[tuple], origin: str = SEED_ORIGIN) -> Dataset:
    """Build a dataset from ``(title, text, label)`` tuples with sequential ids."""
    return Dataset(tuple(
        NewsRecord(id=str(i), title=t, text=x, label=lab, origin=origin)
        for i, (t, x, lab) in enumerate(items)
    ))
