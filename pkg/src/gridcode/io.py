"""Grid files, multiset files, and PPM export.

Grid file layout: a text header of ``key: value`` lines ending with the
line ``end_header``, then ``n**d`` raw colour bytes (C order).
"""
from __future__ import annotations

import json
import os
import re
from typing import Sequence

import numpy as np

from .errors import FileFormatError, ParameterError
from .grid import GridColouring
from .params import derive_params

MAGIC = "gridcode-grid"
SCHEMA_VERSION = 1
COLOUR_ENCODING = "pigment+shade*d;blank=k-1"
ERASURE_RULE = "lex-keep-first"
END_HEADER = "end_header"

_PARAM_KEYS = ("d", "b", "t", "m", "k", "s_max", "n")
_PPM_TOKEN = re.compile(rb"\s*(#[^\n]*\n\s*)*(\S+)")


def grid_header(G: GridColouring) -> str:
    p = G.params
    lines = [MAGIC, f"schema_version: {SCHEMA_VERSION}"]
    lines += [f"{key}: {getattr(p, key)}" for key in _PARAM_KEYS]
    lines += [
        f"colour_encoding: {COLOUR_ENCODING}",
        f"erasure_rule: {ERASURE_RULE}",
        f"payload_bytes: {p.cells}",
        END_HEADER,
    ]
    return "\n".join(lines) + "\n"


def write_grid(G: GridColouring, path: str | os.PathLike) -> None:
    with open(path, "wb") as fh:
        fh.write(grid_header(G).encode("ascii"))
        fh.write(G.cells.tobytes(order="C"))


def _parse_header(fh) -> dict[str, str]:
    first = fh.readline().decode("ascii", "replace").strip()
    if first != MAGIC:
        raise FileFormatError(f"not a grid file (first line {first!r})")
    fields: dict[str, str] = {}
    while True:
        raw = fh.readline()
        if not raw:
            raise FileFormatError("header ended before end_header")
        line = raw.decode("ascii", "replace").strip()
        if line == END_HEADER:
            return fields
        key, sep, value = line.partition(":")
        if not sep:
            raise FileFormatError(f"malformed header line {line!r}")
        fields[key.strip()] = value.strip()


def read_grid(path: str | os.PathLike, max_cells: int | None = None) -> GridColouring:
    with open(path, "rb") as fh:
        fields = _parse_header(fh)
        payload = fh.read()

    version = fields.get("schema_version")
    if version != str(SCHEMA_VERSION):
        raise FileFormatError(f"version mismatch: file has schema_version {version}, expected {SCHEMA_VERSION}")
    try:
        values = {key: int(fields[key]) for key in _PARAM_KEYS}
    except (KeyError, ValueError) as exc:
        raise FileFormatError(f"missing or non-integer header field: {exc}") from None
    for key, expected in (("colour_encoding", COLOUR_ENCODING), ("erasure_rule", ERASURE_RULE)):
        if fields.get(key) != expected:
            raise FileFormatError(f"unsupported {key} {fields.get(key)!r}")

    try:
        p = derive_params(values["d"], values["b"], values["t"], max_cells=max_cells)
    except ParameterError as exc:
        raise FileFormatError(f"header parameters invalid: {exc}") from None
    for key in _PARAM_KEYS:
        if getattr(p, key) != values[key]:
            raise FileFormatError(f"header {key} = {values[key]} but (d, b, t) give {getattr(p, key)}")

    if len(payload) != p.cells:
        raise FileFormatError(f"length mismatch: payload has {len(payload)} bytes, expected n^d = {p.cells}")
    cells = np.frombuffer(payload, dtype=np.uint8).reshape((p.n,) * p.d)
    if cells.size and int(cells.max()) >= p.k:
        raise FileFormatError(f"colour byte {int(cells.max())} >= k = {p.k}")
    return GridColouring(p, cells.copy())


def palette(b: int, d: int) -> np.ndarray:
    """RGB triple per colour index; blank is white."""
    if d > 3:
        raise ParameterError(f"image export supports at most 3 pigments, got d = {d}")
    k = b * d + 1
    table = np.zeros((k, 3), dtype=np.uint8)
    step = 128 // b
    for colour in range(k - 1):
        pigment, shade = colour % d, colour // d
        table[colour, pigment] = 255 - shade * step
    table[k - 1] = 255
    return table


def export_image(G: GridColouring, path: str | os.PathLike) -> None:
    """Binary PPM (P6, maxval 255), one pixel per cell, rows along axis 0."""
    p = G.params
    if p.d != 2:
        raise ParameterError(f"image export needs a 2-dimensional grid, got d = {p.d}")
    pixels = palette(p.b, p.d)[G.cells]
    with open(path, "wb") as fh:
        fh.write(f"P6\n{p.n} {p.n}\n255\n".encode("ascii"))
        fh.write(pixels.tobytes())


def read_ppm(path: str | os.PathLike) -> np.ndarray:
    """Pixels of a P6 file as ``(height, width, 3)`` uint8."""
    with open(path, "rb") as fh:
        data = fh.read()
    tokens = []
    pos = 0
    while len(tokens) < 4:
        match = _PPM_TOKEN.match(data, pos)
        if match is None:
            raise FileFormatError("truncated PPM header")
        tokens.append(match.group(2))
        pos = match.end()
    if tokens[0] != b"P6":
        raise FileFormatError(f"not a P6 file: {tokens[0]!r}")
    width, height, maxval = (int(tok) for tok in tokens[1:])
    if maxval != 255:
        raise FileFormatError(f"unsupported maxval {maxval}")
    body = data[pos + 1 :]
    if len(body) != width * height * 3:
        raise FileFormatError("PPM payload length mismatch")
    return np.frombuffer(body, dtype=np.uint8).reshape(height, width, 3)


def parse_multiset(text: str, k: int | None = None) -> list[int]:
    """Accept ``[5, 3, 8]``, ``{"counts": [...]}``, ``5,3,8`` or ``0:5,1:3,2:8``.

    Colour:count pairs need ``k`` to size the array; unlisted colours are 0.
    """
    text = text.strip()
    if text.startswith(("[", "{")):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FileFormatError(f"bad multiset JSON: {exc}") from None
        counts = data.get("counts") if isinstance(data, dict) else data
        if not isinstance(counts, list):
            raise FileFormatError("multiset JSON needs a list of counts")
    else:
        parts = [part.strip() for part in re.split(r"[,\s]+", text) if part.strip()]
        if parts and all(":" in part for part in parts):
            if k is None:
                raise FileFormatError("colour:count pairs need the colour count k")
            counts = [0] * k
            for part in parts:
                colour, _, count = part.partition(":")
                try:
                    c, v = int(colour), int(count)
                except ValueError:
                    raise FileFormatError(f"bad colour:count pair {part!r}") from None
                if not 0 <= c < k:
                    raise FileFormatError(f"colour {c} outside [0, {k - 1}]")
                counts[c] += v
        else:
            try:
                counts = [int(part) for part in parts]
            except ValueError:
                raise FileFormatError(f"bad multiset {text!r}") from None
    if any(not isinstance(v, int) or isinstance(v, bool) or v < 0 for v in counts):
        raise FileFormatError("multiset counts must be non-negative integers")
    if k is not None and len(counts) != k:
        raise FileFormatError(f"multiset has {len(counts)} counts, expected k = {k}")
    return list(counts)


def format_multiset(counts: Sequence[int], fmt: str = "json") -> str:
    if fmt == "csv":
        return ",".join(str(int(v)) for v in counts)
    return json.dumps({"counts": [int(v) for v in counts]})


def read_multiset(path: str | os.PathLike, k: int | None = None) -> list[int]:
    with open(path) as fh:
        return parse_multiset(fh.read(), k)


def write_multiset(counts: Sequence[int], path: str | os.PathLike, fmt: str = "json") -> None:
    with open(path, "w") as fh:
        fh.write(format_multiset(counts, fmt) + "\n")
