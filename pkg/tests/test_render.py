import pytest

from transcene import (
    Color,
    Material,
    ObjectState,
    PlaneConfig,
    Position,
    SceneGraph,
    Shape,
    Size,
    is_visible,
    render_schematic,
)


def scene(*objects):
    return SceneGraph(objects=tuple(objects), config=PlaneConfig())


def obj(i, x, y, shape=Shape.CUBE):
    return ObjectState(id=i, size=Size.SMALL, color=Color.RED, shape=shape,
                       material=Material.RUBBER, position=Position(x, y))


def test_empty_scene_outline_only():
    svg = render_schematic(scene(), "center")
    assert svg.startswith("<svg")
    assert "<circle" not in svg
    assert '<rect x=' not in svg  # only the background rect, no cube glyphs
    assert svg.count("<polygon") == 1  # the visible-area outline


def test_only_visible_objects_drawn():
    s = scene(obj(0, 0, 0, shape=Shape.SPHERE), obj(1, 30, 30, shape=Shape.SPHERE))
    svg = render_schematic(s, "center")
    assert svg.count("<circle") == 1
    assert ">0<" in svg and ">1<" not in svg


def test_full_plane_draws_everything():
    s = scene(obj(0, 0, 0, shape=Shape.SPHERE), obj(1, 30, 30, shape=Shape.SPHERE))
    svg = render_schematic(s, "center", full_plane=True)
    assert svg.count("<circle") == 2


def test_views_rigidly_transform():
    s = scene(obj(0, 5, 7), obj(1, -10, 3, shape=Shape.CYLINDER))
    center = render_schematic(s, "center")
    left = render_schematic(s, "left")
    assert center != left
    for tag in ("<rect", "<polygon", "<circle"):
        assert center.count(tag) == left.count(tag)  # same glyph multiset
    with pytest.raises(ValueError):
        render_schematic(s, "top")


def test_deterministic_bytes(small_event):
    s = small_event[0].initial
    assert render_schematic(s, "right") == render_schematic(s, "right")


def test_material_styles_differ():
    base = dict(id=0, size=Size.SMALL, color=Color.RED, shape=Shape.CUBE, position=Position(0, 0))
    svgs = {
        m: render_schematic(scene(ObjectState(material=m, **base)), "center")
        for m in Material
    }
    assert len(set(svgs.values())) == 3
