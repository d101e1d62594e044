"""Certificate serialization: byte stability, round trips, atomic writes."""

from __future__ import annotations

import json
import os

import pytest

from freelac import (
    CertificateFile,
    CertificateFormatError,
    RunConfig,
    build_family,
    family_from_payload,
    family_to_payload,
    parse,
    read_certificate,
    serialize,
    write_certificate,
)
from freelac.certificates import fmt_float, make_provenance, parse_float


def sample_cert(kind="family", payload=None) -> CertificateFile:
    return CertificateFile(
        kind=kind,
        payload=payload or {"x": 1, "names": ["b", "a"], "flag": True, "none": None},
        provenance=make_provenance("0.1.0", {"s": 2}, seed=3),
    )


def test_fmt_float_round_trips_exactly():
    for x in (0.0, 1.0, 1 / 3, 2.0**-52, 1e300, -1.2345678901234567e-8, 6 * 6**0.5):
        assert parse_float(fmt_float(x)) == x


def test_serialize_parse_round_trip():
    cert = sample_cert()
    text = serialize(cert)
    again = parse(text)
    assert again == cert
    assert serialize(again) == text


def test_serialized_keys_are_sorted():
    text = serialize(sample_cert())
    doc = json.loads(text)
    assert list(doc.keys()) == sorted(doc.keys())
    assert text.endswith("\n")


def test_raw_floats_rejected():
    cert = sample_cert(payload={"bad": 0.5})
    with pytest.raises(CertificateFormatError):
        serialize(cert)


def test_unknown_kind_rejected():
    with pytest.raises(CertificateFormatError):
        CertificateFile(kind="mystery", payload={}, provenance={})


def test_parse_rejects_bad_documents():
    with pytest.raises(CertificateFormatError):
        parse("not json at all")
    with pytest.raises(CertificateFormatError):
        parse('["a", "list"]')
    with pytest.raises(CertificateFormatError):
        parse('{"format_version": 99, "kind": "family", "payload": {}, "provenance": {}}')
    with pytest.raises(CertificateFormatError):
        parse('{"format_version": 1, "kind": "family", "payload": {}}')


def test_write_and_read_atomic(tmp_path):
    cert = sample_cert()
    path = tmp_path / "cert.json"
    write_certificate(str(path), cert)
    assert read_certificate(str(path)) == cert
    leftovers = [name for name in os.listdir(tmp_path) if name.startswith(".cert-")]
    assert leftovers == []


def test_family_payload_round_trip():
    family = build_family(2, (8, 10), "desk")
    payload = family_to_payload(family)
    again = family_from_payload(payload)
    assert again.s == family.s
    assert again.profile == family.profile
    assert again.table == family.table
    assert [r.subset for r in again.results] == [r.subset for r in family.results]
    assert [r.certificate for r in again.results] == [r.certificate for r in family.results]
    assert family_to_payload(again) == payload


def test_family_payload_survives_cache_deletion():
    family = build_family(2, (8, 9), "desk")
    payload = family_to_payload(family)
    for factor in payload["factors"]:
        del factor["chosen"]
        del factor["forbidden_trace"]
    again = family_from_payload(payload)
    assert [r.subset for r in again.results] == [r.subset for r in family.results]


def test_family_payload_rejects_order_mismatch():
    family = build_family(2, (8, 9), "desk")
    payload = family_to_payload(family)
    payload["factors"][0]["p"] = 523
    with pytest.raises(CertificateFormatError):
        family_from_payload(payload)


def test_family_payload_rejects_malformed_exponents():
    family = build_family(2, (8, 9), "desk")
    payload = family_to_payload(family)
    payload["factors"][0]["exponents"] = [5, 5]
    with pytest.raises(CertificateFormatError):
        family_from_payload(payload)


def test_run_config_defaults_and_validation():
    config = RunConfig(s=2, profile="desk")
    assert config.resolved_range() == (8, 16)
    config = RunConfig(s=4, profile="desk")
    assert config.resolved_range() == (8, 12)
    config = RunConfig(s=2, profile="desk", n_min=9, n_max=11)
    assert config.resolved_range() == (9, 11)
    with pytest.raises(ValueError):
        RunConfig(s=3)
    with pytest.raises(ValueError):
        RunConfig(s=2, tuple_budget=0)


def test_provenance_parameters_have_no_raw_floats():
    config = RunConfig(s=2, profile="desk", tolerance=1e-9)
    params = config.provenance_parameters()
    assert params["tolerance"] == "1.0000000000000001e-09"
    cert = CertificateFile(
        kind="family", payload={}, provenance=make_provenance("0.1.0", params)
    )
    serialize(cert)
