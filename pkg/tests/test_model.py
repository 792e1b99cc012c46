import pytest

from fui_studio.model import (
    EntityBinding,
    FieldMap,
    FuiDocument,
    Placement,
    Screen,
    check_column_type,
)


def make_placement(**overrides):
    values = dict(instance_id="box-1", component_ref="button", x=0, y=0, w=10, h=10, label="Box")
    values.update(overrides)
    return Placement(**values)


def test_constructors_accept_minimal_values():
    doc = FuiDocument(version=1, project="p")
    assert doc.screens == () and doc.bindings == ()


@pytest.mark.parametrize("overrides", [
    {"instance_id": "Bad Id"},
    {"instance_id": ""},
    {"component_ref": "UPPER"},
    {"x": -5},
    {"y": -1},
    {"w": 0},
    {"h": -3},
    {"x": 1.5},
    {"label": "bad \x07 bell"},
    {"action": "Not-A-Slug!"},
    {"props": {"Bad Name": "v"}},
    {"props": {"ok": "bad \x00"}},
])
def test_placement_rejects_bad_values(overrides):
    with pytest.raises(ValueError):
        make_placement(**overrides)


def test_placement_props_are_copied():
    props = {"a": "1"}
    placement = make_placement(props=props)
    props["b"] = "2"
    assert placement.props == {"a": "1"}


def test_placement_overlap_is_interior_only():
    a = make_placement(instance_id="a", x=0, y=0, w=10, h=10)
    touching = make_placement(instance_id="b", x=10, y=0, w=10, h=10)
    inside = make_placement(instance_id="c", x=5, y=5, w=2, h=2)
    assert not a.overlaps(touching)
    assert a.overlaps(inside) and inside.overlaps(a)


def test_screen_rejects_bad_geometry_and_children():
    with pytest.raises(ValueError):
        Screen(id="s", title="S", width=0, height=100)
    with pytest.raises(ValueError):
        Screen(id="s", title="S", width=100, height=100, components=("not a placement",))


def test_document_rejects_unsupported_version():
    with pytest.raises(ValueError):
        FuiDocument(version=2, project="p")


def test_document_rejects_bad_project_slug():
    with pytest.raises(ValueError):
        FuiDocument(version=1, project="My Project")


@pytest.mark.parametrize("value", ["text(20)", "integer", "date", "decimal(10,2)", "decimal(3,0)"])
def test_column_types_accepted(value):
    assert check_column_type(value, "t") == value


@pytest.mark.parametrize("value", [
    "text()", "text(0)", "text(-3)", "varchar(10)", "decimal(2,5)", "decimal(2)", "TEXT(5)", "",
])
def test_column_types_rejected(value):
    with pytest.raises(ValueError):
        check_column_type(value, "t")


def test_field_map_and_binding_validate_shapes():
    fm = FieldMap("user", "emp_id", "text(20)")
    binding = EntityBinding(screen_id="login", entity_name="Emp_Credentials",
                            primary_key="emp_id", field_maps=(fm,))
    assert binding.field_maps[0].column == "emp_id"
    with pytest.raises(ValueError):
        FieldMap("user", "not an ident", "text(20)")
    with pytest.raises(ValueError):
        EntityBinding(screen_id="login", entity_name="1bad", primary_key="x")


def test_duplicate_screen_ids_are_representable():
    # Cross-element rules belong to the validator, not the constructors.
    screen = Screen(id="s", title="S", width=10, height=10)
    doc = FuiDocument(version=1, project="p", screens=(screen, screen))
    assert len(doc.screens) == 2


def test_find_helpers():
    placement = make_placement()
    screen = Screen(id="s", title="S", width=100, height=100, components=(placement,))
    doc = FuiDocument(version=1, project="p", screens=(screen,))
    assert doc.find_screen("s") is screen
    assert doc.find_screen("nope") is None
    assert screen.find("box-1") is placement
    assert screen.find("nope") is None
