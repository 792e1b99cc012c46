#!/usr/bin/env python3
"""Rebuild the shipped fixture data files from their programmatic definition.

Writes the seed catalog descriptors and the HR portal document in
canonical form, then regenerates the golden manifest from them.  Run
only when the fixtures themselves are deliberately changed; the golden
manifest is otherwise frozen.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from fui_studio.catalog import CatalogView, ComponentDescriptor, PropSpec, descriptor_to_dict
from fui_studio.codegen import generate
from fui_studio.fui_xml import serialize_fui
from fui_studio.model import EntityBinding, FieldMap, FuiDocument, Placement, Screen
from fui_studio.packs import load_pack
from fui_studio.validation import validate_fui

DATA = Path(__file__).resolve().parents[1] / "src" / "fui_studio" / "fixtures" / "data"


def seed_descriptors() -> list[ComponentDescriptor]:
    return [
        ComponentDescriptor(
            id="button", name="Button", category="general_purpose",
            prop_schema=(PropSpec(name="style", type="enum",
                                  values=("flat", "raised"), default="flat"),),
            template_hooks=("view",),
        ),
        ComponentDescriptor(
            id="text-field", name="Text Field", category="general_purpose",
            prop_schema=(
                PropSpec(name="placeholder", type="string", default=""),
                PropSpec(name="masked", type="bool", default="false"),
            ),
            template_hooks=("view", "handler-field"),
        ),
        ComponentDescriptor(
            id="combo-box", name="Combo Box", category="general_purpose",
            prop_schema=(PropSpec(name="options", type="string", default=""),),
            template_hooks=("view", "handler-field"),
        ),
        ComponentDescriptor(
            id="label", name="Label", category="general_purpose",
            template_hooks=("view",),
        ),
        ComponentDescriptor(
            id="interview-result-grid", name="Interview Result Grid",
            category="domain_specific", domain_tags=frozenset({"hr"}),
            prop_schema=(PropSpec(name="page-size", type="int", default="10"),),
            template_hooks=("view",),
        ),
        ComponentDescriptor(
            id="profile-card", name="Profile Card",
            category="domain_specific", domain_tags=frozenset({"hr"}),
            prop_schema=(PropSpec(name="show-photo", type="bool", default="false"),),
            template_hooks=("view",),
        ),
        ComponentDescriptor(
            id="welcome-banner", name="Welcome Banner", category="product_specific",
            template_hooks=("view",),
        ),
    ]


def tf(iid: str, x: int, y: int, label: str, **props: str) -> Placement:
    return Placement(instance_id=iid, component_ref="text-field",
                     x=x, y=y, w=240, h=30, label=label, props=dict(props))


def lbl(iid: str, x: int, y: int, w: int, label: str) -> Placement:
    return Placement(instance_id=iid, component_ref="label", x=x, y=y, w=w, h=30, label=label)


def hr_portal_document() -> FuiDocument:
    screens = (
        Screen(id="index", title="HR Portal", width=800, height=600, components=(
            lbl("label-1", 40, 40, 300, "HR Portal Home"),
            lbl("label-2", 40, 100, 560,
                "Existing candidates can sign in; new candidates register here."),
            Placement(instance_id="button-1", component_ref="button",
                      x=40, y=160, w=160, h=40, label="Sign In",
                      props={"style": "raised"}),
            Placement(instance_id="button-2", component_ref="button",
                      x=220, y=160, w=160, h=40, label="Register Here"),
        )),
        Screen(id="login", title="Sign In", width=800, height=600, components=(
            lbl("label-1", 40, 80, 120, "Username"),
            tf("username", 180, 80, "Username", placeholder="Enter username"),
            lbl("label-2", 40, 130, 120, "Password"),
            tf("password", 180, 130, "Password", masked="true"),
            Placement(instance_id="signin", component_ref="button",
                      x=180, y=190, w=120, h=40, label="Sign In",
                      props={"style": "raised"}, action="login"),
        )),
        Screen(id="welcome", title="Welcome", width=800, height=600, components=(
            Placement(instance_id="banner", component_ref="welcome-banner",
                      x=40, y=40, w=720, h=60, label="Welcome to the HR Portal"),
            lbl("label-1", 40, 130, 300, "You are signed in."),
            Placement(instance_id="view-profile", component_ref="button",
                      x=40, y=190, w=160, h=40, label="View Profile"),
            Placement(instance_id="change-password", component_ref="button",
                      x=220, y=190, w=180, h=40, label="Change Password"),
        )),
        Screen(id="view-profile", title="View Profile", width=800, height=600, components=(
            Placement(instance_id="card", component_ref="profile-card",
                      x=40, y=40, w=480, h=320, label="Employee Profile",
                      props={"show-photo": "true"}),
            lbl("label-1", 40, 390, 320, "Profile details are shown above."),
        )),
        Screen(id="add-candidate", title="Add Candidate", width=800, height=600, components=(
            lbl("label-1", 40, 30, 300, "New Candidate Details"),
            tf("regn-id", 40, 80, "Registration Id"),
            tf("name", 40, 130, "Name"),
            tf("address", 40, 180, "Address"),
            tf("qual", 40, 230, "Qualification"),
            tf("email", 320, 80, "Email"),
            tf("mobile", 320, 130, "Mobile"),
            tf("experience", 320, 180, "Experience (years)"),
            Placement(instance_id="submit", component_ref="button",
                      x=40, y=290, w=180, h=40, label="Add Candidate",
                      props={"style": "raised"}, action="add-candidate"),
        )),
        Screen(id="interview-result", title="Interview Result", width=800, height=600, components=(
            lbl("label-1", 40, 30, 300, "Record Interview Result"),
            tf("regn-id", 40, 80, "Registration Id"),
            Placement(instance_id="result", component_ref="combo-box",
                      x=40, y=130, w=240, h=30, label="Result",
                      props={"options": "selected,rejected,on-hold"}),
            tf("remarks", 40, 180, "Remarks"),
            Placement(instance_id="grid", component_ref="interview-result-grid",
                      x=40, y=240, w=720, h=240, label="Recent Results"),
            Placement(instance_id="save", component_ref="button",
                      x=40, y=510, w=160, h=40, label="Save Result",
                      props={"style": "raised"}, action="interview-result"),
        )),
        Screen(id="registration", title="Employee Registration", width=800, height=600,
               components=(
            lbl("label-1", 40, 20, 240, "Employee Details"),
            tf("emp-id", 40, 60, "Employee Id"),
            tf("name", 40, 110, "Name"),
            tf("address", 40, 160, "Address"),
            tf("dob", 40, 210, "Date of Birth"),
            tf("experience", 40, 260, "Experience (years)"),
            tf("doj", 40, 310, "Date of Joining"),
            tf("email", 40, 360, "Email"),
            tf("mobile", 40, 410, "Mobile"),
            lbl("label-2", 320, 20, 240, "Salary Details"),
            tf("designation", 320, 60, "Designation"),
            tf("basic", 320, 110, "Basic Pay"),
            tf("da", 320, 160, "Dearness Allowance"),
            tf("hra", 320, 210, "House Rent Allowance"),
            tf("cca", 320, 260, "City Compensatory Allowance"),
            tf("pf", 320, 310, "Provident Fund"),
            Placement(instance_id="register", component_ref="button",
                      x=320, y=380, w=160, h=40, label="Register",
                      props={"style": "raised"}, action="registration"),
        )),
    )

    bindings = (
        EntityBinding(screen_id="registration", entity_name="Emp_Profile", primary_key="emp_id",
                      field_maps=(
            FieldMap("emp-id", "emp_id", "text(20)"),
            FieldMap("name", "name", "text(80)"),
            FieldMap("address", "address", "text(200)"),
            FieldMap("dob", "dob", "date"),
            FieldMap("experience", "experience", "integer"),
            FieldMap("doj", "doj", "date"),
            FieldMap("email", "email", "text(120)"),
            FieldMap("mobile", "mobile", "text(15)"),
        )),
        EntityBinding(screen_id="login", entity_name="Emp_Credentials", primary_key="emp_id",
                      field_maps=(
            FieldMap("username", "emp_id", "text(20)"),
            FieldMap("password", "password", "text(64)"),
        )),
        EntityBinding(screen_id="registration", entity_name="Emp_Salary", primary_key="emp_id",
                      field_maps=(
            FieldMap("emp-id", "emp_id", "text(20)"),
            FieldMap("designation", "designation", "text(80)"),
            FieldMap("basic", "basic", "decimal(10,2)"),
            FieldMap("da", "da", "decimal(10,2)"),
            FieldMap("hra", "hra", "decimal(10,2)"),
            FieldMap("cca", "cca", "decimal(10,2)"),
            FieldMap("pf", "pf", "decimal(10,2)"),
        )),
        EntityBinding(screen_id="add-candidate", entity_name="Candidate_Profile",
                      primary_key="Regn_id", field_maps=(
            FieldMap("regn-id", "Regn_id", "text(20)"),
            FieldMap("name", "name", "text(80)"),
            FieldMap("address", "address", "text(200)"),
            FieldMap("qual", "qual", "text(80)"),
            FieldMap("email", "email", "text(120)"),
            FieldMap("mobile", "mobile", "text(15)"),
            FieldMap("experience", "experience", "integer"),
        )),
        EntityBinding(screen_id="interview-result", entity_name="Cand_Int_Results",
                      primary_key="regn_id", field_maps=(
            FieldMap("regn-id", "regn_id", "text(20)"),
            FieldMap("result", "result", "text(20)"),
            FieldMap("remarks", "remarks", "text(200)"),
        )),
    )

    return FuiDocument(version=1, project="hr-portal", screens=screens, bindings=bindings)


def main() -> None:
    descriptors = seed_descriptors()
    catalog_dir = DATA / "store" / "catalog"
    for descriptor in descriptors:
        target = catalog_dir / descriptor.id / "1.json"
        target.parent.mkdir(parents=True, exist_ok=True)
        payload = json.dumps(descriptor_to_dict(descriptor), indent=2, ensure_ascii=False) + "\n"
        target.write_text(payload, encoding="utf-8")
        print(f"wrote {target}")

    doc = hr_portal_document()
    view = CatalogView(descriptors)
    report = validate_fui(doc, view)
    if not report.ok:
        for issue in report.issues:
            print(issue)
        raise SystemExit("fixture document does not validate")

    fui_path = DATA / "hr-portal.fui.xml"
    fui_path.write_text(serialize_fui(doc), encoding="utf-8")
    print(f"wrote {fui_path}")

    pack = load_pack(DATA / "pack-reference")
    result = generate(doc, pack, view)
    golden_path = DATA / "golden" / "manifest.json"
    golden_path.parent.mkdir(parents=True, exist_ok=True)
    golden_path.write_text(result.manifest, encoding="utf-8")
    print(f"wrote {golden_path} ({len(result.artifacts)} artifacts)")


if __name__ == "__main__":
    main()
