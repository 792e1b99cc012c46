import json
import random
from dataclasses import replace
from pathlib import Path

import pytest

from fui_studio.catalog import (
    CatalogError,
    CatalogStore,
    ComponentDescriptor,
    InvalidDocumentError,
    NoChangeError,
    PropSpec,
    ReuseCount,
    descriptor_from_dict,
    descriptor_to_dict,
)
from fui_studio.fui_xml import parse_fui
from fui_studio.model import FuiDocument, Placement, Screen

from randdoc import random_valid_document


def button_descriptor(**overrides) -> ComponentDescriptor:
    values = dict(
        id="button", name="Button", category="general_purpose",
        prop_schema=(PropSpec(name="label", type="string"),),
        template_hooks=("view",),
    )
    values.update(overrides)
    return ComponentDescriptor(**values)


def small_doc(counts: dict[str, int]) -> FuiDocument:
    """A valid document with ``counts[ref]`` placements per component."""
    placements = []
    i = 0
    for ref, count in counts.items():
        for _ in range(count):
            i += 1
            placements.append(Placement(
                instance_id=f"{ref}-{i}", component_ref=ref,
                x=(i % 5) * 150, y=(i // 5) * 60, w=100, h=40, label=f"P{i}",
            ))
    screen = Screen(id="main", title="Main", width=800, height=600,
                    components=tuple(placements))
    return FuiDocument(version=1, project="anything", screens=(screen,))


def test_first_registration_is_version_one(empty_store):
    assert empty_store.register(button_descriptor()) == 1
    assert empty_store.head("button").version == 1


def test_modified_registration_bumps_version_and_keeps_history(empty_store):
    empty_store.register(button_descriptor())
    modified = button_descriptor(prop_schema=(
        PropSpec(name="label", type="string"),
        PropSpec(name="style", type="enum", values=("flat", "raised")),
    ))
    assert empty_store.register(modified) == 2

    # oracle: read both descriptor files back and diff them directly
    root = empty_store.root / "catalog" / "button"
    v1 = json.loads((root / "1.json").read_text())
    v2 = json.loads((root / "2.json").read_text())
    assert v1["version"] == 1 and v2["version"] == 2
    assert [p["name"] for p in v1["prop_schema"]] == ["label"]
    assert [p["name"] for p in v2["prop_schema"]] == ["label", "style"]
    assert empty_store.get("button", 1).version == 1


def test_domain_specific_requires_tags():
    with pytest.raises(ValueError):
        ComponentDescriptor(id="interview-result-grid", name="Grid",
                            category="domain_specific", domain_tags=frozenset())


def test_identical_registration_is_rejected(empty_store):
    empty_store.register(button_descriptor())
    with pytest.raises(NoChangeError):
        empty_store.register(button_descriptor())
    # version numbering is unaffected by the rejected attempt
    assert empty_store.versions("button") == [1]


def test_descriptor_json_round_trip():
    descriptor = button_descriptor(domain_tags=frozenset())
    data = descriptor_to_dict(descriptor)
    assert list(data) == ["id", "name", "category", "domain_tags",
                          "prop_schema", "template_hooks", "version"]
    assert descriptor_from_dict(data) == descriptor
    with pytest.raises(ValueError):
        descriptor_from_dict({**data, "surprise": 1})


def test_search_filters(store):
    general = store.search(category="general_purpose")
    assert [d.id for d in general] == ["button", "combo-box", "label", "text-field"]
    assert [d.id for d in store.search(text="butt")] == ["button"]
    assert [d.id for d in store.search(domain_tag="hr")] == [
        "interview-result-grid", "profile-card",
    ]
    assert [d.id for d in store.search(text="Text Field")] == ["text-field"]
    assert store.search(text="nothing-matches") == []


def test_search_matches_independent_filter_oracle(store):
    queries = [
        {"text": "e"}, {"category": "domain_specific"}, {"domain_tag": "hr"},
        {"text": "o", "category": "general_purpose"}, {},
    ]
    all_heads = [store.get(cid, store.versions(cid)[-1]) for cid in store.ids()]
    for query in queries:
        expected = sorted(
            (
                d.id
                for d in all_heads
                if ("text" not in query
                    or query["text"].lower() in d.id.lower()
                    or query["text"].lower() in d.name.lower())
                and ("category" not in query or d.category == query["category"])
                and ("domain_tag" not in query or query["domain_tag"] in d.domain_tags)
            )
        )
        assert [d.id for d in store.search(**query)] == expected


def test_search_completeness_against_directory_scan(store):
    scanned = sorted(p.name for p in (store.root / "catalog").iterdir() if p.is_dir())
    assert [d.id for d in store.search()] == scanned


def test_record_reuse_empty_document_is_a_zero_delta(store):
    delta = store.record_reuse("blank", FuiDocument(version=1, project="blank"))
    assert delta == {}
    assert store.stats() == {}


def test_record_reuse_counts_placements_and_projects(store):
    delta = store.record_reuse("demo", small_doc({"button": 5, "text-field": 2}))
    assert delta["button"] == ReuseCount(placements=5, projects=1)
    assert delta["text-field"] == ReuseCount(placements=2, projects=1)
    stats = store.stats()
    assert stats["button"].placements == 5
    assert stats["text-field"].projects == 1


def test_rerecording_replaces_prior_contribution(store):
    store.record_reuse("demo", small_doc({"button": 5}))
    delta = store.record_reuse("demo", small_doc({"button": 3}))
    assert delta["button"] == ReuseCount(placements=-2, projects=0)
    assert store.stats()["button"] == ReuseCount(placements=3, projects=1)


def test_invalid_document_is_rejected_and_stats_untouched(store):
    store.record_reuse("demo", small_doc({"button": 1}))
    before = store.stats()
    with pytest.raises(InvalidDocumentError):
        store.record_reuse("demo", small_doc({"no-such-component": 1}))
    assert store.stats() == before


def _recount_oracle(store: CatalogStore) -> dict[str, ReuseCount]:
    """From-scratch recount over the stored project documents."""
    totals: dict[str, ReuseCount] = {}
    for slug in store.project_slugs():
        doc = parse_fui((store.root / "projects" / f"{slug}.fui.xml").read_text())
        seen: dict[str, int] = {}
        for screen in doc.screens:
            for placement in screen.components:
                seen[placement.component_ref] = seen.get(placement.component_ref, 0) + 1
        for ref, count in seen.items():
            current = totals.get(ref, ReuseCount())
            totals[ref] = ReuseCount(current.placements + count, current.projects + 1)
    return totals


def test_stats_match_recount_after_random_sequences(store):
    rng = random.Random(4242)
    seed = tuple(store.heads())
    projects = [f"proj-{i}" for i in range(6)]
    for _ in range(25):
        project = rng.choice(projects)
        doc = random_valid_document(rng, seed, project)
        store.record_reuse(project, doc)
        assert store.stats() == _recount_oracle(store)


def test_rarely_used_report(store):
    all_ids = store.ids()
    fresh = store.rarely_used_report(0)
    assert fresh == [(cid, 0) for cid in sorted(all_ids)]
    assert store.rarely_used_report(10**9) == fresh

    store.record_reuse("demo", small_doc({"button": 2, "label": 1}))
    report = store.rarely_used_report(0)
    # oracle: everything never placed, recounted independently
    placed = set(_recount_oracle(store))
    assert report == [(cid, 0) for cid in sorted(set(all_ids) - placed)]
    # placements ascending, then id: the singly-placed label sorts last
    assert [cid for cid, _ in store.rarely_used_report(1)] == (
        sorted(set(all_ids) - {"button", "label"}) + ["label"]
    )


def test_rarely_used_orders_by_placements_then_id(store):
    store.record_reuse("a", small_doc({"button": 2, "combo-box": 1}))
    rows = store.rarely_used_report(10)
    assert rows == sorted(rows, key=lambda r: (r[1], r[0]))


def test_reuse_recorded_for_fixture_document(store, fixtures):
    store.record_reuse("hr-portal", fixtures.fui_fixture)
    report = store.rarely_used_report(0)
    # exactly the components never placed in the fixture
    placed = {p.component_ref for s in fixtures.fui_fixture.screens for p in s.components}
    assert [cid for cid, _ in report] == sorted(set(store.ids()) - placed)


def test_durability_reopen_reproduces_index_and_stats(store):
    store.register(button_descriptor(id="gizmo", name="Gizmo"))
    store.record_reuse("demo", small_doc({"button": 4}))
    stats_bytes = (store.root / "catalog" / "stats.json").read_bytes()

    reopened = CatalogStore.open(store.root)
    assert reopened.ids() == store.ids()
    assert {cid: reopened.versions(cid) for cid in reopened.ids()} == {
        cid: store.versions(cid) for cid in store.ids()
    }
    assert reopened.stats() == store.stats()
    assert (reopened.root / "catalog" / "stats.json").read_bytes() == stats_bytes
    for cid in store.ids():
        for version in store.versions(cid):
            assert reopened.get(cid, version) == store.get(cid, version)


def test_version_sequences_stay_gapless(empty_store):
    rng = random.Random(11)
    descriptor = button_descriptor()
    empty_store.register(descriptor)
    for i in range(10):
        if rng.random() < 0.3:
            with pytest.raises(NoChangeError):
                empty_store.register(empty_store.head("button"))
        else:
            descriptor = replace(descriptor, name=f"Button {i}")
            empty_store.register(descriptor)
        versions = empty_store.versions("button")
        assert versions == list(range(1, len(versions) + 1))


def test_open_rejects_gapped_store(tmp_path: Path):
    root = tmp_path / "broken"
    (root / "catalog" / "thing").mkdir(parents=True)
    payload = descriptor_to_dict(button_descriptor(id="thing", name="Thing"))
    payload["version"] = 2
    (root / "catalog" / "thing" / "2.json").write_text(json.dumps(payload))
    with pytest.raises(CatalogError):
        CatalogStore.open(root)


def test_open_requires_existing_root(tmp_path: Path):
    with pytest.raises(CatalogError):
        CatalogStore.open(tmp_path / "missing")


def test_no_temp_files_left_behind(store):
    store.register(button_descriptor(id="fresh", name="Fresh"))
    store.record_reuse("demo", small_doc({"button": 1}))
    leftovers = list(store.root.rglob("*.tmp"))
    assert leftovers == []


def test_prop_spec_validation():
    with pytest.raises(ValueError):
        PropSpec(name="style", type="enum", values=())
    with pytest.raises(ValueError):
        PropSpec(name="style", type="string", values=("x",))
    with pytest.raises(ValueError):
        PropSpec(name="count", type="int", default="many")
    assert PropSpec(name="count", type="int", default="3").accepts("-17")
    assert not PropSpec(name="on", type="bool").accepts("yes")
