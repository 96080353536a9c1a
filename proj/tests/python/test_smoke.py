import pytest

import gcbundle as gcb


def test_examples_catalog():
    names = [name for name, _ in gcb.examples()]
    assert "contact_r3" in names
    assert "non_jacobi" in names
    for name in names:
        assert gcb.example(name).strip()


def test_check_contact():
    report = gcb.check(gcb.example("contact_r3"))
    assert report["schema"] == 1
    assert report["pass"] is True
    assert {c["name"] for c in report["checks"]} >= {"almost", "integrable", "contact"}


def test_check_failure_has_residual():
    report = gcb.check(gcb.example("non_jacobi"), ["jacobi"])
    assert report["pass"] is False
    items = report["checks"][0]["items"]
    assert any(not i["zero"] and i["residual"] for i in items)


def test_homogenize_round_trip():
    text = gcb.example("contact_r3")
    hom = gcb.homogenize(text)
    assert gcb.check(hom, ["gc"])["pass"] is True
    back = gcb.dehomogenize(hom)
    assert gcb.check(back)["pass"] is True


def test_induce_im():
    out = gcb.induce_im(gcb.example("pair_groupoid_r"))
    assert gcb.check(out, ["im"])["pass"] is True


def test_parse_error():
    with pytest.raises(gcb.ParseError):
        gcb.check("coords = x\n")
