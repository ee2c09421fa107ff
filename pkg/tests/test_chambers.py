import cmath
import math

import pytest

from zzstab import (
    BraidWord,
    ChargePath,
    HeartDescriptor,
    StabilityData,
    WeylElement,
    chamber_identify,
    contragredient_apply,
    detect_crossings,
    heart_indecomposables,
    lift_path,
    locate,
    monodromy,
    positive_roots,
    render_chart,
)
from zzstab.errors import (
    GenericityError,
    NotALoopError,
    RefinementError,
    StabilityError,
    WallError,
)


def ray(deg, r=1.0):
    return r * cmath.exp(1j * math.pi * deg / 180)


def circle_loop(a2_unused=None, r=0.8, steps=16, z2=ray(125)):
    samples = []
    for k in range(steps + 1):
        th = math.pi / 36 + 2 * math.pi * k / steps
        samples.append((r * cmath.exp(1j * th), z2))
    return ChargePath(tuple(samples))


def test_charge_path_validation():
    with pytest.raises(ValueError):
        ChargePath(((ray(5), ray(125)), (ray(5), ray(125))))
    p = ChargePath(((ray(5), ray(125)), (ray(10), ray(125))))
    assert p.segments() == 1
    back = ChargePath.from_json(p.to_json())
    for got, want in zip(back.samples, p.samples):
        assert got == pytest.approx(want)


def test_locate_open_chamber(a2, example_charge):
    rep = locate(a2, example_charge)
    assert rep.region == "open_chamber"
    assert rep.walls == () and rep.hyperplanes == ()


def test_locate_fundamental_domain_wall(a2):
    rep = locate(a2, (complex(-1, 0), complex(0, 1)))
    assert rep.region == "fundamental_domain"
    assert rep.walls == ((1, 0),)


def test_locate_outside(a2):
    rep = locate(a2, (ray(-20), complex(0, 1)))
    assert rep.region == "outside"
    assert rep.walls == ()


def test_locate_hyperplane(a2):
    rep = locate(a2, (ray(5), -ray(5)))
    assert rep.region == "hyperplane"
    assert rep.hyperplanes == ((1, 1),)


def test_chamber_identify_identity(a2, example_charge):
    assert chamber_identify(a2, example_charge).is_identity()


def test_chamber_identify_constructed(a2, example_charge):
    s1 = WeylElement.from_word(a2, (0,))
    moved = contragredient_apply(a2, s1, example_charge)
    w = chamber_identify(a2, moved)
    back = contragredient_apply(a2, w, moved)
    assert all(z.imag > 0 for z in back)
    assert w.matrix == s1.matrix


def test_chamber_identify_deeper(a2):
    Z = (ray(-20), ray(120))
    w = chamber_identify(a2, Z)
    back = contragredient_apply(a2, w, Z)
    assert all(z.imag > 0 for z in back)
    assert chamber_identify(a2, back).is_identity()


def test_chamber_identify_wall_error(a2):
    with pytest.raises(WallError):
        chamber_identify(a2, (complex(-1, 0), complex(0, 1)))


def test_detect_crossings_single_event(a2):
    path = ChargePath(((ray(5), ray(125)), (ray(-20), ray(125))))
    events = detect_crossings(a2, path, positive_roots(a2))
    assert len(events) == 1
    ev = events[0]
    assert ev.root == (1, 0) and ev.re_sign == 1 and ev.leaves_upper
    # interpolation: crossing where sin(5deg)(1-t) = sin(20deg) t approximately
    expect_t = math.sin(math.pi / 36) / (math.sin(math.pi / 36) + math.sin(math.pi / 9))
    assert ev.t == pytest.approx(expect_t, abs=1e-8)


def test_detect_crossings_none_inside_chamber(a2):
    path = ChargePath(((ray(5), ray(125)), (ray(40), ray(100))))
    assert detect_crossings(a2, path, positive_roots(a2)) == []


def test_detect_crossings_hyperplane_rejected(a2):
    path = ChargePath(((ray(5), ray(125)), (-ray(5), ray(125))))
    with pytest.raises(GenericityError):
        detect_crossings(a2, path, positive_roots(a2))


def test_detect_crossings_simultaneous_rejected(a2):
    path = ChargePath(((ray(5), ray(5)), (ray(-20), ray(-20))))
    with pytest.raises(GenericityError):
        detect_crossings(a2, path, positive_roots(a2))


def test_lift_deformation_path(a2):
    path = ChargePath(((ray(5), ray(125)), (ray(-5), ray(125))))
    word, final = lift_path(a2, path)
    assert str(word) == "s1'"
    assert final.simple_classes == ((-1, 0), (1, 1))


def test_lift_negative_real_crossing(a2):
    path = ChargePath(((ray(60), ray(176)), (ray(60), ray(184))))
    word, final = lift_path(a2, path)
    assert str(word) == "s2"
    assert final.simple_classes == ((1, 1), (0, -1))


def test_lift_constant_path(a2, example_charge):
    word, final = lift_path(a2, ChargePath((example_charge,)))
    assert len(word) == 0
    assert final.word == BraidWord(())


def test_lift_coarse_multi_wall_segment_rejected(a2):
    # one segment sweeping a1 from 5 to 245 degrees nets sign flips on two
    # walls at once; the path must be refined
    path = ChargePath(((ray(5), ray(125)), (ray(245), ray(125))))
    with pytest.raises((RefinementError, GenericityError)):
        lift_path(a2, path)


def test_lift_invalid_start_sample_rejected(a2):
    # start sample is not a stability function on the claimed start heart
    path = ChargePath(((ray(-30), ray(125)), (ray(-40), ray(125))))
    with pytest.raises(StabilityError):
        lift_path(a2, path)


def test_lift_from_twisted_start_heart(a2):
    start_heart = HeartDescriptor.build(a2, BraidWord.parse("s1"))
    # simples of s1(H_lin) have classes -a1 and a1+a2
    Z0 = (ray(185), ray(100))  # Z(-a1)=ray(5): valid; Z(a1+a2) upper
    Z1 = (ray(175), ray(100))  # -a1 dips through positive axis: expect s1'
    word, final = lift_path(a2, ChargePath((Z0, Z1)), start_heart)
    assert str(word) == "s1'"
    assert final.word.free_reduce() == BraidWord(())


def test_monodromy_quotient_single_crossing(a2):
    z2 = ray(125)
    samples = []
    for k in range(9):
        th = math.pi / 36 + k * math.pi / 8
        samples.append((0.8 * cmath.exp(1j * th), z2 + (k / 8) * 0.8 * ray(5)))
    word, weyl = monodromy(a2, ChargePath(tuple(samples)), quotient=True)
    assert str(word) == "s1"
    assert weyl == [[-1, 1], [0, 1]]


def test_monodromy_encircling_loop(a2):
    word, weyl = monodromy(a2, circle_loop(), quotient=False)
    assert str(word) == "s1 s1"
    assert weyl == [[1, 0], [0, 1]]


def test_monodromy_word_stable_under_refinement(a2):
    loop = circle_loop()
    w1, _ = monodromy(a2, loop, quotient=False)
    w2, _ = monodromy(a2, loop.refined(), quotient=False)
    assert w1 == w2


def test_reversed_path_gives_inverse_word(a2):
    loop = circle_loop()
    w, _ = monodromy(a2, loop, quotient=False)
    wr, _ = lift_path(a2, loop.reversed_path())
    assert len((wr * w).free_reduce()) == 0
    assert len((w * wr).free_reduce()) == 0


def test_concatenating_paths_concatenates_words(a2):
    loop = circle_loop()
    first = ChargePath(loop.samples[:9])
    second = ChargePath(loop.samples[8:])
    wa, ha = lift_path(a2, first)
    wb, hb = lift_path(a2, second, start_heart=ha)
    whole, _ = lift_path(a2, loop)
    assert wa.letters + wb.letters == whole.letters
    assert hb.simple_classes == HeartDescriptor.build(a2, whole).simple_classes


def test_monodromy_open_path_rejected(a2):
    path = ChargePath(((ray(5), ray(125)), (ray(40), ray(125))))
    with pytest.raises(NotALoopError):
        monodromy(a2, path, quotient=False)
    with pytest.raises(NotALoopError):
        monodromy(a2, path, quotient=True)


def test_trivial_loop(a2, example_charge):
    z1, z2 = example_charge
    loop = ChargePath(((z1, z2), (1.1 * z1, z2), (z1, z2)))
    word, weyl = monodromy(a2, loop, quotient=False)
    assert len(word) == 0


def test_chart_rays_and_determinism(a2, example_sd):
    cat = heart_indecomposables(a2, example_sd.heart, word_len=1)
    svg = render_chart(example_sd, cat)
    assert svg == render_chart(example_sd, cat)
    assert svg.count("<line") == 2 + 3  # axes + three semistable rays
    for label in ("Z(P1)", "Z(P2)", "Z(s2(P1))"):
        assert label in svg
    assert "s1(P2)" not in svg


def test_chart_boundary_ray_on_negative_axis(a2):
    sd = StabilityData(HeartDescriptor.identity(a2), (complex(-1, 0), ray(125)))
    cat = heart_indecomposables(a2, sd.heart, word_len=1)
    svg = render_chart(sd, cat)
    assert "Z(P1)" in svg


def test_chart_never_empty(a2, example_sd):
    cat = heart_indecomposables(a2, example_sd.heart, word_len=0)
    svg = render_chart(example_sd, cat)
    assert svg.count("<line") >= 2 + 2


def test_emit_chart_writes_file(tmp_path, a2, example_sd):
    from zzstab import emit_chart

    cat = heart_indecomposables(a2, example_sd.heart, word_len=1)
    out = tmp_path / "chart.svg"
    svg = emit_chart(example_sd, cat, str(out))
    assert out.read_text() == svg


def test_lift_on_a3(a3):
    Z0 = (ray(5), ray(80), ray(140))
    Z1 = (ray(-5), ray(80), ray(140))
    word, final = lift_path(a3, ChargePath((Z0, Z1)))
    assert str(word) == "s1'"
    assert final.simple_classes[0] == (-1, 0, 0)
