import random
from dataclasses import replace
from itertools import combinations

import pytest

from fui_studio.catalog import CatalogView, ComponentDescriptor
from fui_studio.model import FuiDocument, Placement, Screen
from fui_studio.validation import ERROR, OUT_OF_BOUNDS, OVERLAP, WARNING, validate_fui

from variants import CORRUPTION_VARIANTS, EXTRA_VARIANTS


def test_clean_fixture_has_no_findings(fixtures):
    report = validate_fui(fixtures.fui_fixture, fixtures.catalog_view)
    assert report.issues == ()
    assert report.ok


@pytest.mark.parametrize(
    "name,corrupt,expected_code",
    [(n, c, e) for n, c, e in CORRUPTION_VARIANTS + EXTRA_VARIANTS],
    ids=[n for n, _, _ in CORRUPTION_VARIANTS + EXTRA_VARIANTS],
)
def test_each_corruption_yields_exactly_its_code(fixtures, name, corrupt, expected_code):
    doc = corrupt(fixtures.fui_fixture)
    report = validate_fui(doc, fixtures.catalog_view)
    assert report.codes() == (expected_code,), f"{name}: {report.issues}"
    expected_severity = WARNING if expected_code == OVERLAP else ERROR
    assert report.issues[0].severity == expected_severity


def test_out_of_bounds_arithmetic():
    screen = Screen(id="s", title="S", width=800, height=600, components=(
        Placement(instance_id="c", component_ref="box", x=790, y=0, w=200, h=10, label="L"),
    ))
    doc = FuiDocument(version=1, project="p", screens=(screen,))
    catalog = CatalogView([ComponentDescriptor(id="box", name="Box", category="general_purpose")])
    report = validate_fui(doc, catalog)
    assert report.codes() == (OUT_OF_BOUNDS,)


def test_identical_rectangles_warn_but_do_not_fail():
    a = Placement(instance_id="a", component_ref="box", x=10, y=10, w=50, h=20, label="A")
    b = Placement(instance_id="b", component_ref="box", x=10, y=10, w=50, h=20, label="B")
    doc = FuiDocument(version=1, project="p", screens=(
        Screen(id="s", title="S", width=200, height=200, components=(a, b)),
    ))
    catalog = CatalogView([ComponentDescriptor(id="box", name="Box", category="general_purpose")])
    report = validate_fui(doc, catalog)
    assert report.codes() == (OVERLAP,)
    assert report.ok


def _brute_force_overlaps(screen: Screen) -> set[tuple[str, str]]:
    """Independent oracle: pairwise intersection with positive area."""
    pairs = set()
    for a, b in combinations(screen.components, 2):
        x_overlap = min(a.x + a.w, b.x + b.w) - max(a.x, b.x)
        y_overlap = min(a.y + a.h, b.y + b.h) - max(a.y, b.y)
        if x_overlap > 0 and y_overlap > 0:
            pairs.add((a.instance_id, b.instance_id))
    return pairs


def test_overlap_warnings_match_brute_force_oracle():
    rng = random.Random(7)
    catalog = CatalogView([ComponentDescriptor(id="box", name="Box", category="general_purpose")])
    for _ in range(60):
        components = tuple(
            Placement(
                instance_id=f"c{i}", component_ref="box",
                x=rng.randint(0, 90), y=rng.randint(0, 90),
                w=rng.randint(1, 40), h=rng.randint(1, 40),
                label=f"C{i}",
            )
            for i in range(rng.randint(0, 8))
        )
        screen = Screen(id="s", title="S", width=200, height=200, components=components)
        doc = FuiDocument(version=1, project="p", screens=(screen,))
        report = validate_fui(doc, catalog)
        warned = set()
        for issue in report.warnings:
            first = issue.locus.split("component[")[1].rstrip("]")
            other = issue.message.split("'")[1]
            warned.add((first, other))
        assert warned == _brute_force_overlaps(screen)


def test_issue_order_is_deterministic_and_traversal_based(fixtures):
    from variants import dup_instance_id, empty_label

    doc = empty_label(dup_instance_id(fixtures.fui_fixture))
    first = validate_fui(doc, fixtures.catalog_view)
    second = validate_fui(doc, fixtures.catalog_view)
    assert first == second
    codes = first.codes()
    assert set(codes) == {"DUP_INSTANCE_ID", "EMPTY_LABEL"}


def test_unknown_component_suppresses_prop_checks(fixtures):
    doc = fixtures.fui_fixture
    screen = doc.find_screen("index")
    target = screen.find("button-1")
    patched = replace(target, component_ref="mystery", props={"whatever": "x"})
    components = tuple(patched if p.instance_id == "button-1" else p for p in screen.components)
    new_screen = replace(screen, components=components)
    new_doc = replace(doc, screens=tuple(new_screen if s.id == "index" else s for s in doc.screens))
    report = validate_fui(new_doc, fixtures.catalog_view)
    assert report.codes() == ("UNKNOWN_COMPONENT",)


def test_locus_paths_name_screen_and_component(fixtures):
    from variants import bad_prop_type

    report = validate_fui(bad_prop_type(fixtures.fui_fixture), fixtures.catalog_view)
    assert report.issues[0].locus == "screen[index]/component[button-1]/prop[style]"
