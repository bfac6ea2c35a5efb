"""Model file format: magic + JSON header + little-endian float64 payload.

Round-trips are bit-exact.  The header pins the format version, the
feature-order version, architecture dimensions and vocabularies; any mismatch
is rejected before a single parameter is read.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from ..errors import ModelFormatError
from ..features import FEATURE_ORDER_VERSION
from .identifier import IdentifierModel
from .ranker import RankerModel

MAGIC = b"KNM1"
FORMAT_VERSION = 1

_KINDS = {"identifier": IdentifierModel, "ranker": RankerModel}


def save_model(model, path) -> None:
    params = model.parameters()
    header = model.header()
    header["format_version"] = FORMAT_VERSION
    header["feature_order_version"] = FEATURE_ORDER_VERSION
    header["tensors"] = [{"name": name, "shape": list(p.shape)} for name, p in params]
    header_bytes = json.dumps(header).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", len(header_bytes)))
        fh.write(header_bytes)
        for _name, p in params:
            fh.write(np.ascontiguousarray(p.data, dtype="<f8").tobytes())


def load_model(path):
    raw = Path(path).read_bytes()
    if len(raw) < 8 or raw[:4] != MAGIC:
        raise ModelFormatError(f"{path}: not a model file (bad magic)")
    header_len = struct.unpack("<I", raw[4:8])[0]
    if len(raw) < 8 + header_len:
        raise ModelFormatError(f"{path}: truncated header")
    try:
        header = json.loads(raw[8:8 + header_len].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ModelFormatError(f"{path}: unreadable header: {exc}")
    if header.get("format_version") != FORMAT_VERSION:
        raise ModelFormatError(
            f"{path}: format_version {header.get('format_version')!r}, "
            f"expected {FORMAT_VERSION}")
    if header.get("feature_order_version") != FEATURE_ORDER_VERSION:
        raise ModelFormatError(
            f"{path}: feature_order_version {header.get('feature_order_version')!r} "
            f"does not match current {FEATURE_ORDER_VERSION}")
    kind = header.get("kind")
    if kind not in _KINDS:
        raise ModelFormatError(f"{path}: unknown model kind {kind!r}")
    model = _KINDS[kind].from_header(header)

    params = model.parameters()
    declared = header.get("tensors", [])
    if len(declared) != len(params):
        raise ModelFormatError(
            f"{path}: header declares {len(declared)} tensors, model has {len(params)}")
    offset = 8 + header_len
    for (name, p), meta in zip(params, declared):
        if meta["name"] != name or tuple(meta["shape"]) != p.shape:
            raise ModelFormatError(
                f"{path}: tensor mismatch: file has {meta['name']}{meta['shape']}, "
                f"model expects {name}{list(p.shape)}")
        nbytes = int(np.prod(p.shape)) * 8
        chunk = raw[offset:offset + nbytes]
        if len(chunk) != nbytes:
            raise ModelFormatError(f"{path}: truncated payload at tensor {name}")
        p.data = np.frombuffer(chunk, dtype="<f8").reshape(p.shape).astype(np.float64)
        offset += nbytes
    if offset != len(raw):
        raise ModelFormatError(f"{path}: {len(raw) - offset} trailing bytes after payload")
    return model
