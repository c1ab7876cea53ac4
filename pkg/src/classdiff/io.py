"""File formats: annotations (JSON lines), DFMX1 matrices, DWLM1 checkpoints
and JSON reports.

DFMX1: ``b"DFMX1"``, u32 rows, u32 cols, then rows*cols float32, all
little-endian, row-major. DWLM1: ``b"DWLM1"``, u32 K, u32 d, K*d float64
(``W`` row-major) then K float64 (``b``).
"""

import hashlib
import json
import math
import struct
from pathlib import Path

import numpy as np

from .core import FeatureMatrix, LabelMatrix
from .errors import (
    BadMagicError,
    DuplicateIdError,
    NonFiniteValueError,
    ParseError,
    TruncatedFileError,
    UnknownLabelError,
)
from .trainer import LinearModel

__all__ = [
    "dump_report",
    "file_digest",
    "load_annotations",
    "load_features",
    "load_model",
    "load_report",
    "read_dfmx",
    "read_dwlm",
    "save_annotations",
    "save_features",
    "save_model",
    "save_report",
    "write_dfmx",
    "write_dwlm",
]

FEATURE_MAGIC = b"DFMX1"
MODEL_MAGIC = b"DWLM1"
_HEADER = struct.Struct("<5sII")


def _read_header(buf, magic):
    if len(buf) < len(magic) or buf[:len(magic)] != magic:
        raise BadMagicError(f"expected magic {magic.decode()}")
    if len(buf) < _HEADER.size:
        raise TruncatedFileError("header is incomplete")
    _, rows, cols = _HEADER.unpack_from(buf)
    return rows, cols


def write_dfmx(matrix):
    data = np.ascontiguousarray(np.asarray(matrix), dtype="<f4")
    if data.ndim != 2:
        raise ValueError("DFMX1 stores 2-D matrices only")
    return _HEADER.pack(FEATURE_MAGIC, *data.shape) + data.tobytes()


def read_dfmx(buf):
    rows, cols = _read_header(buf, FEATURE_MAGIC)
    expected = _HEADER.size + 4 * rows * cols
    if len(buf) < expected:
        raise TruncatedFileError(f"need {expected} bytes for {rows}x{cols}, got {len(buf)}")
    if len(buf) > expected:
        raise ParseError(f"{len(buf) - expected} trailing bytes after {rows}x{cols} matrix")
    data = np.frombuffer(buf, dtype="<f4", count=rows * cols, offset=_HEADER.size)
    if not np.isfinite(data).all():
        raise NonFiniteValueError("matrix contains NaN or infinite values")
    return data.reshape(rows, cols).astype(np.float64)


def save_features(path, features):
    data = features.data if isinstance(features, FeatureMatrix) else features
    Path(path).write_bytes(write_dfmx(data))


def load_features(path):
    return FeatureMatrix(read_dfmx(Path(path).read_bytes()))


def write_dwlm(model):
    W = np.ascontiguousarray(model.W, dtype="<f8")
    b = np.ascontiguousarray(model.b, dtype="<f8")
    return _HEADER.pack(MODEL_MAGIC, *W.shape) + W.tobytes() + b.tobytes()


def read_dwlm(buf):
    k, d = _read_header(buf, MODEL_MAGIC)
    expected = _HEADER.size + 8 * (k * d + k)
    if len(buf) < expected:
        raise TruncatedFileError(f"need {expected} bytes for K={k}, d={d}, got {len(buf)}")
    if len(buf) > expected:
        raise ParseError(f"{len(buf) - expected} trailing bytes after model")
    values = np.frombuffer(buf, dtype="<f8", offset=_HEADER.size)
    if not np.isfinite(values).all():
        raise NonFiniteValueError("model contains NaN or infinite values")
    return LinearModel(values[:k * d].reshape(k, d), values[k * d:])


def save_model(path, model):
    Path(path).write_bytes(write_dwlm(model))


def load_model(path):
    return read_dwlm(Path(path).read_bytes())


def _read_class_list(path):
    names = [line.strip() for line in Path(path).read_text(encoding="utf-8").splitlines()]
    return [name for name in names if name]


def load_annotations(path, class_list=None):
    """Read ``{"id": ..., "labels": [...]}`` lines into a :class:`LabelMatrix`.

    Column order follows ``class_list`` when given, else first appearance.
    """
    fixed = class_list is not None
    names = _read_class_list(class_list) if fixed else []
    index = {name: i for i, name in enumerate(names)}
    seen, rows = set(), []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON ({exc.msg})", line=lineno) from None
            if (not isinstance(record, dict) or not isinstance(record.get("id"), str)
                    or not isinstance(record.get("labels"), list)
                    or not all(isinstance(lab, str) for lab in record["labels"])):
                raise ParseError('expected {"id": str, "labels": [str, ...]}', line=lineno)
            if record["id"] in seen:
                raise DuplicateIdError(f"line {lineno}: duplicate id {record['id']!r}")
            seen.add(record["id"])
            cols = []
            for label in record["labels"]:
                if label not in index:
                    if fixed:
                        raise UnknownLabelError(f"line {lineno}: label {label!r} not in class list")
                    index[label] = len(names)
                    names.append(label)
                cols.append(index[label])
            rows.append(cols)
    if not rows:
        raise ParseError("annotation file has no records")
    Y = np.zeros((len(rows), len(names)), dtype=np.int64)
    for r, cols in enumerate(rows):
        Y[r, cols] = 1
    return LabelMatrix(Y, tuple(names))


def save_annotations(path, labels, ids=None):
    if ids is None:
        ids = [f"s{i:06d}" for i in range(labels.n_samples)]
    with open(path, "w", encoding="utf-8") as fh:
        for sid, row in zip(ids, labels.data):
            names = [labels.class_names[j] for j in np.flatnonzero(row)]
            fh.write(json.dumps({"id": sid, "labels": names}) + "\n")


def file_digest(path):
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _format_float(x):
    if not math.isfinite(x):
        return "null"
    text = format(x, ".17g")
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def _encode(value, indent, level):
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if value is None or isinstance(value, (bool, np.bool_)):
        return json.dumps(None if value is None else bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _format_float(float(value))
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_encode(v, indent, level + 1)}"
                 for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(value, (list, tuple, np.ndarray)):
        if len(value) == 0:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dump_report(report, indent=2):
    """Serialize with every float at 17 significant digits (lossless re-read)."""
    return _encode(report, indent, 0) + "\n"


def save_report(path, report):
    Path(path).write_text(dump_report(report), encoding="utf-8")


def load_report(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg})", line=exc.lineno) from None
