import json

import pytest

from cyclotile import ModulusMismatch, ParseError, ZmSet, load_set, parse_set, save_set
from cyclotile.setio import DuplicateElementsWarning, dumps_set


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_json(tmp_path):
    E = load_set(write(tmp_path, "a.json", '{"modulus":900,"elements":[0,30]}'))
    assert E == ZmSet(900, (0, 30))


def test_text_with_duplicates(tmp_path):
    path = write(tmp_path, "a.txt", "900\n0 30 30")
    with pytest.warns(DuplicateElementsWarning):
        E = load_set(path)
    assert len(E) == 2


def test_out_of_range(tmp_path):
    with pytest.raises(ParseError):
        load_set(write(tmp_path, "a.json", '{"modulus":900,"elements":[900]}'))
    with pytest.raises(ParseError):
        parse_set("900\n-1 3")


@pytest.mark.parametrize("text", ['{"modulus": 900}', '{"modulus": "x", "elements": []}',
                                  '{"modulus": 900, "elements": [1.5]}', "[1, 2]",
                                  '{"modulus": 900, "elements": [true]}', "", "abc\n1 2",
                                  "{not json", '{"modulus": 0, "elements": []}'])
def test_malformed(text):
    with pytest.raises(ParseError):
        parse_set(text)


def test_modulus_mismatch(tmp_path):
    path = write(tmp_path, "a.json", '{"modulus":900,"elements":[0]}')
    assert load_set(path, expected_modulus=900) == ZmSet(900, (0,))
    with pytest.raises(ModulusMismatch):
        load_set(path, expected_modulus=1764)


def test_unsorted_input_is_canonicalized():
    assert parse_set("12\n5 1 3").elements == (1, 3, 5)


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_set(tmp_path / "nope.json")


@pytest.mark.parametrize("fmt", ["json", "text"])
def test_round_trip(tmp_path, canon_b, fmt):
    path = tmp_path / f"b.{fmt}"
    save_set(canon_b, path, fmt)
    assert load_set(path) == canon_b


def test_dumps():
    assert json.loads(dumps_set(ZmSet(4, (0, 2)))) == {"modulus": 4, "elements": [0, 2]}
    with pytest.raises(ValueError):
        dumps_set(ZmSet(4, (0,)), "xml")
