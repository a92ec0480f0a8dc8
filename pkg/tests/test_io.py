import numpy as np
import pytest

from gridcode.errors import FileFormatError, ParameterError
from gridcode.grid import GridColouring, build_grid
from gridcode.io import (
    export_image,
    format_multiset,
    grid_header,
    parse_multiset,
    read_grid,
    read_multiset,
    read_ppm,
    write_grid,
    write_multiset,
)
from gridcode.params import derive_params
from gridcode.verify import verify_grid_uniqueness


def test_round_trip(example_grid, tmp_path):
    path = tmp_path / "g.bin"
    write_grid(example_grid, path)
    assert read_grid(path) == example_grid
    raw = path.read_bytes()
    assert raw.endswith(example_grid.cells.tobytes())
    assert b"erasure_rule: lex-keep-first" in raw


@pytest.mark.parametrize("dbt", [(2, 1, 2), (2, 1, 3), (3, 1, 1)])
def test_round_trip_matrix(dbt, tmp_path):
    G = build_grid(derive_params(*dbt))
    write_grid(G, tmp_path / "g.bin")
    assert read_grid(tmp_path / "g.bin") == G


def test_round_trip_256(grid256, tmp_path):
    write_grid(grid256, tmp_path / "g.bin")
    again = read_grid(tmp_path / "g.bin")
    assert verify_grid_uniqueness(again).passed


def _corrupt(example_grid, tmp_path, header=None, payload=None):
    path = tmp_path / "bad.bin"
    path.write_bytes((header or grid_header(example_grid)).encode() + (payload if payload is not None else example_grid.cells.tobytes()))
    return path


def test_short_payload(example_grid, tmp_path):
    path = _corrupt(example_grid, tmp_path, payload=example_grid.cells.tobytes()[:-1])
    with pytest.raises(FileFormatError, match="length mismatch"):
        read_grid(path)


def test_version_mismatch(example_grid, tmp_path):
    header = grid_header(example_grid).replace("schema_version: 1", "schema_version: 2")
    with pytest.raises(FileFormatError, match="version mismatch"):
        read_grid(_corrupt(example_grid, tmp_path, header=header))


def test_colour_out_of_range(example_grid, tmp_path):
    payload = bytes([3]) + example_grid.cells.tobytes()[1:]
    with pytest.raises(FileFormatError, match="colour byte"):
        read_grid(_corrupt(example_grid, tmp_path, payload=payload))


def test_header_inconsistent(example_grid, tmp_path):
    header = grid_header(example_grid).replace("n: 8", "n: 9")
    with pytest.raises(FileFormatError):
        read_grid(_corrupt(example_grid, tmp_path, header=header))


def test_not_a_grid(tmp_path):
    (tmp_path / "x").write_bytes(b"hello\n")
    with pytest.raises(FileFormatError):
        read_grid(tmp_path / "x")


def test_ppm_example(example_grid, tmp_path):
    path = tmp_path / "g.ppm"
    export_image(example_grid, path)
    assert path.read_bytes().startswith(b"P6\n8 8\n255\n")
    pixels = read_ppm(path)
    assert pixels.shape == (8, 8, 3)
    assert tuple(pixels[0, 0]) == (255, 255, 255)
    assert tuple(pixels[4, 0]) == (255, 0, 0)
    assert tuple(pixels[0, 5]) == (0, 255, 0)


def test_ppm_256(grid256, tmp_path):
    export_image(grid256, tmp_path / "g.ppm")
    pixels = read_ppm(tmp_path / "g.ppm")
    assert pixels.shape == (256, 256, 3)
    distinct = {tuple(p) for p in pixels.reshape(-1, 3).tolist()}
    assert len(distinct) == 5
    # shade 1 of a pigment is 255 - 64
    assert (191, 0, 0) in distinct and (0, 191, 0) in distinct


def test_ppm_refuses_3d(tmp_path):
    p = derive_params(3, 1, 1)
    G = GridColouring(p, np.zeros((p.n,) * 3, dtype=np.uint8))
    with pytest.raises(ParameterError):
        export_image(G, tmp_path / "x.ppm")


@pytest.mark.parametrize(
    "text,k,expected",
    [
        ("5,3,8", None, [5, 3, 8]),
        ("5 3 8", 3, [5, 3, 8]),
        ("[5, 3, 8]", 3, [5, 3, 8]),
        ('{"counts": [5, 3, 8]}', 3, [5, 3, 8]),
        ("0:5,1:3,2:8", 3, [5, 3, 8]),
        ("2:16", 3, [0, 0, 16]),
    ],
)
def test_parse_multiset(text, k, expected):
    assert parse_multiset(text, k) == expected


@pytest.mark.parametrize("text,k", [("5,3", 3), ("0:5", None), ("a,b", None), ("[-1, 2]", None), ("4:1", 3)])
def test_parse_multiset_rejects(text, k):
    with pytest.raises(FileFormatError):
        parse_multiset(text, k)


@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_multiset_file_round_trip(tmp_path, fmt):
    write_multiset([6, 2, 8], tmp_path / "m.txt", fmt)
    assert read_multiset(tmp_path / "m.txt", 3) == [6, 2, 8]


def test_format_multiset():
    assert format_multiset((6, 2, 8)) == '{"counts": [6, 2, 8]}'
    assert format_multiset((6, 2, 8), "csv") == "6,2,8"
