import json
from fractions import Fraction

import pytest

from shicat.arrangement import build_shi_cone
from shicat.cli import main
from shicat.exactalg import A1, A2, Z, Poly
from shicat.serialize import (
    arrangement_from_json,
    arrangement_to_json,
    derivation_from_json,
    derivation_to_json,
    poly_from_json,
    poly_to_json,
)
from shicat.construction import build_srb_plus


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestSerialize:
    def test_poly_roundtrip(self):
        p = A1 ** 3 - A2.scale(Fraction(2, 7)) * Z + 5
        data = poly_to_json(p)
        assert data[0] == [3, 0, 0, "1/1"]
        assert poly_from_json(json.loads(json.dumps(data))) == p

    def test_zero_poly(self):
        assert poly_to_json(Poly.const(0)) == []

    def test_derivation_roundtrip(self):
        for d in build_srb_plus(2):
            back = derivation_from_json(derivation_to_json(d))
            assert back == d and back.label == d.label

    def test_arrangement_roundtrip(self):
        arr = build_shi_cone(2)
        back = arrangement_from_json(arrangement_to_json(arr))
        assert back.form_set() == arr.form_set()
        assert back.expected_exponents == arr.expected_exponents


class TestBuild:
    def test_json_structure(self, capsys):
        code, out, _ = run(capsys, "build", "--k", "1")
        assert code == 0
        data = json.loads(out)
        assert set(data) >= {"tool", "version", "config", "shi", "cat"}
        assert [d["label"] for d in data["shi"]["basis"]] == ["euler", "phi1_k1", "phi2_k1"]
        assert len(data["cat"]["eta"]) == 2

    def test_text(self, capsys):
        code, out, _ = run(capsys, "build", "--k", "1", "--family", "cat", "--format", "text")
        assert code == 0
        assert out.startswith("== Cat^1: 10 hyperplanes")

    def test_deterministic(self, capsys):
        first = run(capsys, "build", "--k", "2")[1]
        assert run(capsys, "build", "--k", "2")[1] == first

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "b.json"
        assert main(["build", "--k", "0", "--family", "shi", "--out", str(path)]) == 0
        assert capsys.readouterr().out == ""
        assert json.loads(path.read_text())["shi"]["arrangement"]["name"] == "Shi^0"

    @pytest.mark.parametrize("k", ["9", "-1"])
    def test_bad_k(self, capsys, k):
        code, _, err = run(capsys, "build", "--k", k)
        assert code == 2 and "error" in err

    def test_cap_override(self, capsys):
        assert run(capsys, "build", "--k", "2", "--cap", "1")[0] == 2


class TestVerify:
    def test_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--k-max", "2", "--no-timings")
        data = json.loads(out)
        assert code == 0 and data["overall"] == "pass"
        assert all("wall_time_s" not in r for r in data["records"])

    def test_byte_stable(self, capsys):
        argv = ("verify", "--k-max", "1", "--suite", "saito", "swap", "--no-timings")
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]

    def test_timings_present(self, capsys):
        data = json.loads(run(capsys, "verify", "--k-max", "0", "--suite", "saito")[1])
        assert all("wall_time_s" in r for r in data["records"])

    def test_text(self, capsys):
        code, out, _ = run(capsys, "verify", "--k-max", "1", "--suite", "saito", "--format", "text")
        assert code == 0
        assert out.splitlines()[-1].startswith("overall: pass")

    def test_unknown_suite(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "bogus"])
        assert exc.value.code == 2


class TestCertify:
    def test_shi1_det_divisible_by_every_form(self, capsys):
        code, out, _ = run(capsys, "certify", "--k", "1", "--family", "shi", "--no-timings")
        cert = json.loads(out)["certificates"][0]
        assert code == 0 and cert["verdict"] == "pass"
        assert len(cert["quotients"]) == 7
        assert all(q["quotient"] is not None for q in cert["quotients"])

    def test_cat0_constant(self, capsys):
        cert = json.loads(run(capsys, "certify", "--k", "0", "--family", "cat")[1])["certificates"][0]
        assert cert["c"] == "-6/1"

    def test_cat2_degrees(self, capsys):
        cert = json.loads(run(capsys, "certify", "--k", "2", "--family", "cat")[1])["certificates"][0]
        assert cert["degrees"] == [1, 7, 8]

    def test_basis_roundtrip(self, capsys, tmp_path):
        path = tmp_path / "b.json"
        main(["build", "--k", "2", "--out", str(path)])
        direct = json.loads(run(capsys, "certify", "--k", "2", "--no-timings")[1])
        code, out, _ = run(capsys, "certify", "--basis", str(path), "--no-timings")
        again = json.loads(out)
        assert code == 0
        assert again["certificates"] == direct["certificates"]
        assert [r["verdict"] for r in again["records"]] == [r["verdict"] for r in direct["records"]]

    def test_tampered_basis_fails(self, capsys, tmp_path):
        path = tmp_path / "b.json"
        main(["build", "--k", "1", "--family", "shi", "--out", str(path)])
        data = json.loads(path.read_text())
        data["shi"]["basis"][1] = derivation_to_json(build_srb_plus(1)[1])
        path.write_text(json.dumps(data))
        code, out, _ = run(capsys, "certify", "--basis", str(path))
        assert code == 1 and json.loads(out)["overall"] == "fail"

    def test_missing_inputs(self, capsys, tmp_path):
        assert run(capsys, "certify")[0] == 2
        assert run(capsys, "certify", "--basis", str(tmp_path / "nope.json"))[0] == 2
        empty = tmp_path / "e.json"
        empty.write_text("{}")
        assert run(capsys, "certify", "--basis", str(empty))[0] == 2
