import numpy as np
import pytest

from qgft import QSignal, QSpectrum, Quaternion, lp_norm, random_signal
from qgft.cli import main, parse_group_spec, CliError
from qgft.fileio import read_ppm, read_qsig, write_ppm, write_qsig


def run(*argv):
    return main([str(a) for a in argv])


def test_parse_group_spec():
    assert parse_group_spec("8").moduli == (8,)
    assert parse_group_spec("3x4").moduli == (3, 4)
    assert parse_group_spec("2X2x3").moduli == (2, 2, 3)
    with pytest.raises(CliError):
        parse_group_spec("8x")
    with pytest.raises(CliError):
        parse_group_spec("0")


def test_transform_inverse_round_trip(rng, tmp_path, z8):
    f = random_signal(z8, rng)
    src = tmp_path / "f.qsig"
    write_qsig(str(src), f)
    for kind in ("rqft", "sqft"):
        spec = tmp_path / "F.qsig"
        back = tmp_path / "g.qsig"
        assert run("transform", src, spec, "--kind", kind) == 0
        assert run("inverse", spec, back, "--kind", kind) == 0
        g = read_qsig(str(back))
        assert lp_norm(g - f, 2) <= 1e-9 * lp_norm(f, 2)


def test_transform_modes_agree(rng, tmp_path, z3x4):
    f = random_signal(z3x4, rng)
    src = tmp_path / "f.qsig"
    write_qsig(str(src), f)
    fast = tmp_path / "fast.qsig"
    direct = tmp_path / "direct.qsig"
    for kind in ("rqft", "sqft", "lqft"):
        assert run("transform", src, fast, "--kind", kind) == 0
        assert run("transform", src, direct, "--kind", kind, "--mode", "direct") == 0
        a, b = read_qsig(str(fast)), read_qsig(str(direct))
        assert lp_norm(a - b, 2) <= 1e-9 * lp_norm(f, 2)


def test_transform_delta_gives_ones(tmp_path, z4):
    src = tmp_path / "delta.qsig"
    write_qsig(str(src), QSignal.delta(z4))
    out = tmp_path / "ones.qsig"
    assert run("transform", src, out) == 0
    F = read_qsig(str(out))
    assert isinstance(F, QSpectrum)
    assert np.allclose(F.values[..., 0], 1.0, atol=1e-12)
    assert np.allclose(F.values[..., 1:], 0.0, atol=1e-12)


def test_transform_with_custom_axes(rng, tmp_path, z4):
    f = random_signal(z4, rng)
    src = tmp_path / "f.qsig"
    write_qsig(str(src), f)
    out = tmp_path / "F.qsig"
    axes = "0 0 1 0 0 0 0 1".split()  # (j, k)
    back = tmp_path / "g.qsig"
    assert run("transform", src, out, "--axes", *axes) == 0
    assert run("inverse", out, back, "--axes", *axes) == 0
    g = read_qsig(str(back))
    assert lp_norm(g - f, 2) <= 1e-9 * lp_norm(f, 2)
    # invalid axes: parallel pair
    bad = "0 1 0 0 0 1 0 0".split()
    assert run("transform", src, out, "--axes", *bad) == 2


def test_side_and_format_errors(rng, tmp_path, z4, capsys):
    f = random_signal(z4, rng)
    primal = tmp_path / "p.qsig"
    write_qsig(str(primal), f)
    dual = tmp_path / "d.qsig"
    assert run("transform", primal, dual) == 0

    out = tmp_path / "o.qsig"
    assert run("transform", dual, out) == 2     # dual fed to forward
    assert run("inverse", primal, out) == 2     # primal fed to inverse
    assert run("smooth", dual, out) == 2

    garbage = tmp_path / "g.qsig"
    garbage.write_bytes(b"NOPE" + bytes(40))
    assert run("transform", garbage, out) == 2
    capsys.readouterr()
    truncated = tmp_path / "t.qsig"
    truncated.write_bytes(write_and_trim(f))
    assert run("transform", truncated, out) == 2
    assert "length" in capsys.readouterr().err
    assert run("transform", tmp_path / "missing.qsig", out) == 2
    assert not out.exists()


def write_and_trim(sig):
    from qgft.fileio import encode_qsig

    return encode_qsig(sig)[:-16]


def test_smooth_reports_delta_and_sweeps(rng, tmp_path, z8, capsys):
    f = random_signal(z8, rng)
    src = tmp_path / "f.qsig"
    write_qsig(str(src), f)

    out = tmp_path / "s.qsig"
    assert run("smooth", src, out, "--family", "dirichlet", "--level", 4) == 0
    smoothed = read_qsig(str(out))
    assert lp_norm(smoothed - f, 2) <= 1e-10 * lp_norm(f, 2)

    const = tmp_path / "c.qsig"
    write_qsig(str(const), QSignal.constant(z8, Quaternion(1, 2, 3, 4)))
    assert run("smooth", const, out, "--family", "poisson_geometric", "--level", 1) == 0
    assert np.allclose(read_qsig(str(out)).values, QSignal.constant(z8, Quaternion(1, 2, 3, 4)).values, atol=1e-12)

    capsys.readouterr()
    deltas = []
    for level in range(4):
        assert run("smooth", src, out, "--family", "fejer", "--level", level) == 0
        err_line = capsys.readouterr().err.strip()
        assert err_line.startswith("delta_l2 = ")
        deltas.append(float(err_line.split("=")[1]))
    assert deltas == sorted(deltas, reverse=True)  # monotone shrinking residual

    with pytest.raises(SystemExit) as exc:
        run("smooth", src, out, "--family", "unknown")
    assert exc.value.code == 2


def test_verify_deterministic_and_exit_codes(tmp_path, capsys):
    args = ("verify", "--group", "4", "--trials", "4", "--seed", "9")
    assert run(*args) == 0
    first = capsys.readouterr().out
    assert run(*args) == 0
    second = capsys.readouterr().out
    assert first == second
    assert "result: PASS" in first

    json_path = tmp_path / "report.json"
    assert run(*args, "--json", json_path) == 0
    capsys.readouterr()
    import json

    report = json.loads(json_path.read_text())
    assert report["passed"] is True
    assert {c["name"] for c in report["checks"]} >= {
        "rqft-inversion",
        "plancherel-rqft",
        "multiplication-formula",
        "energy-identity",
    }

    assert run("verify", "--group", "4", "--trials", "3", "--self-test-corrupt") == 1
    out = capsys.readouterr().out
    assert "[FAIL] rqft-inversion" in out


def test_verify_zero_trials(capsys):
    assert run("verify", "--group", "6", "--trials", "0") == 0
    out = capsys.readouterr().out
    assert "SKIP" in out and "FAIL" not in out


def test_verify_canonical_invocation(capsys):
    assert run("verify", "--group", "8", "--trials", "25", "--seed", "42") == 0
    out = capsys.readouterr().out
    assert "result: PASS" in out and "FAIL" not in out


def test_verify_tol_override(capsys):
    # an impossible tolerance must fail; a huge one must pass
    assert run("verify", "--group", "4", "--trials", "2", "--tol", "1e-30") == 1
    assert run("verify", "--group", "4", "--trials", "2", "--tol", "10") == 0
    capsys.readouterr()


def test_verify_bad_group():
    assert run("verify", "--group", "8y3", "--trials", "1") == 2


def test_image_round_trip(rng, tmp_path):
    pix = rng.integers(0, 256, size=(16, 16, 3), dtype=np.uint8)
    src = tmp_path / "in.ppm"
    write_ppm(str(src), pix)
    q = tmp_path / "img.qsig"
    assert run("img2q", src, q) == 0
    sig = read_qsig(str(q))
    assert isinstance(sig, QSignal)
    assert sig.group.moduli == (16,)
    assert np.allclose(sig.values[..., 0], 0.0)
    assert np.allclose(sig.values[..., 1:], pix / 255.0)

    out = tmp_path / "out.ppm"
    assert run("q2img", q, out) == 0
    assert src.read_bytes() == out.read_bytes()


def test_img2q_all_black(tmp_path):
    src = tmp_path / "black.ppm"
    write_ppm(str(src), np.zeros((2, 2, 3), dtype=np.uint8))
    q = tmp_path / "black.qsig"
    assert run("img2q", src, q) == 0
    assert np.array_equal(read_qsig(str(q)).values, np.zeros((2, 2, 4)))


def test_img2q_rejects_non_square(rng, tmp_path, capsys):
    pix = rng.integers(0, 256, size=(4, 6, 3), dtype=np.uint8)
    src = tmp_path / "rect.ppm"
    write_ppm(str(src), pix)
    assert run("img2q", src, tmp_path / "x.qsig") == 2
    assert "square" in capsys.readouterr().err


def test_q2img_clamps(tmp_path, z4):
    vals = np.zeros((4, 4, 4))
    vals[..., 1] = 2.0   # clamps to 255
    vals[..., 2] = -1.0  # clamps to 0
    vals[0, 0, 3] = 0.5  # rounds half-up to 128
    src = tmp_path / "v.qsig"
    write_qsig(str(src), QSignal(z4, vals))
    out = tmp_path / "v.ppm"
    assert run("q2img", src, out) == 0
    _, _, pix = read_ppm(str(out))
    assert pix[..., 0].max() == pix[..., 0].min() == 255
    assert pix[..., 1].max() == 0
    assert pix[0, 0, 2] == 128


def test_spectrum_rendering(tmp_path, z8):
    zero = tmp_path / "z.qsig"
    write_qsig(str(zero), QSpectrum.zeros(z8))
    out = tmp_path / "z.ppm"
    assert run("spectrum", out, out) == 2  # missing input is a usage error
    assert run("spectrum", zero, out) == 0
    _, _, pix = read_ppm(str(out))
    assert pix.max() == 0  # all black

    delta = tmp_path / "d.qsig"
    write_qsig(str(delta), QSpectrum.delta(z8))
    assert run("spectrum", delta, out) == 0
    _, _, pix = read_ppm(str(out))
    assert pix[4, 4].tolist() == [255, 255, 255]  # zero frequency centered
    assert pix.sum() == 3 * 255

    const = tmp_path / "c.qsig"
    write_qsig(str(const), QSpectrum.constant(z8, Quaternion(2.0)))
    assert run("spectrum", const, out) == 0
    _, _, pix = read_ppm(str(out))
    assert pix.min() == 255  # uniform white

    primal = tmp_path / "p.qsig"
    write_qsig(str(primal), QSignal.zeros(z8))
    assert run("spectrum", primal, out) == 2


def test_bench(capsys):
    assert run("bench", "--sizes", 16, 32, "--repeats", 1) == 0
    out = capsys.readouterr().out
    assert "speedup" in out
    assert len(out.strip().splitlines()) == 3


def test_dump(rng, tmp_path, capsys, z3x4):
    f = random_signal(z3x4, rng)
    src = tmp_path / "f.qsig"
    write_qsig(str(src), f)
    assert run("dump", src) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[1] == "bin,x1,x2,w,x,y,z"
    assert len(out) == 2 + 144
    first = out[2].split(",")
    assert first[:3] == ["0", "0:0", "0:0"]
    assert [float(v) for v in first[3:]] == list(f.values[0, 0])
