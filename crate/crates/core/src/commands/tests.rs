use super::*;
use crate::exactalg::FieldSpec;
use crate::zoo::CubicDeformationCoefficients;

fn zoo_doc(name: &str, deformation: Option<usize>) -> InputDocument {
    let options = RunOptions {
        zoo: Some(name.into()),
        deformation,
        ..RunOptions::default()
    };
    let r = run(Command::Zoo, None, &options);
    assert_eq!(r.status, Status::Ok, "{}", r.to_text());
    textformat::parse(r.document.as_ref().unwrap()).unwrap()
}

fn degree(d: usize) -> RunOptions {
    RunOptions {
        degree: Some(d),
        ..RunOptions::default()
    }
}

#[test]
fn command_names_round_trip() {
    for c in Command::ALL {
        assert_eq!(c.name().parse::<Command>().unwrap(), c);
    }
    assert!("frobnicate".parse::<Command>().is_err());
}

#[test]
fn check_cy_on_yang_mills() {
    let doc = zoo_doc("yang-mills:2", None);
    let r = run(Command::CheckCy, Some(&doc), &degree(7));
    assert_eq!(r.exit_code(), 0, "{}", r.to_text());
    assert_eq!(r.fields["verdict"], "consistent up to degree 7");
    assert_eq!(r.fields["hilbert"], json!([1, 3, 9, 24, 64, 168, 441, 1155]));
    let missing = run(Command::CheckCy, Some(&doc), &RunOptions::default());
    assert_eq!(missing.status, Status::Error);
    assert_eq!(missing.fields["error"]["kind"], "precondition");
}

#[test]
fn check_cy_rejects_one_loop() {
    let doc = zoo_doc("one-loop-cubic", None);
    let r = run(Command::CheckCy, Some(&doc), &degree(6));
    assert_eq!(r.exit_code(), 1);
    assert_eq!(r.fields["verdict"], "inconsistent");
}

#[test]
fn reconstruct_reports_characteristic_hypothesis() {
    let doc = zoo_doc("two-vertex:3,3", Some(3));
    let r = run(Command::Reconstruct, Some(&doc), &RunOptions::default());
    assert_eq!(r.exit_code(), 2);
    assert_eq!(r.fields["error"]["kind"], "characteristic-divides-factorial");
    assert!(r.to_text().contains("error.message: characteristic 3 divides N! for N = 3"));
}

#[test]
fn derive_round_trips_type_a() {
    let inst = zoo::cubic_type_a(FieldSpec::Rationals.from_i64(1), FieldSpec::Rationals.from_i64(2)).unwrap();
    let c = CubicDeformationCoefficients::from_i64(FieldSpec::Rationals, [1, -2, 3, 1, 2, -1, 4, 5, -3]);
    let lower = zoo::type_a_expected_lower(&inst, &c).unwrap();
    let mut doc = InputDocument::from_instance(&inst);
    doc.potential = Some(doc.potential.unwrap().plus(&lower));
    let r = run(Command::Derive, Some(&doc), &RunOptions::default());
    assert_eq!(r.exit_code(), 0, "{}", r.to_text());
    assert_eq!(r.fields["round_trip"], true);

    let d = zoo::type_a_deformation(&inst, &c).unwrap();
    let with_phi = InputDocument::from_instance(&inst).with_deformation(&d);
    let rec = run(Command::Reconstruct, Some(&with_phi), &RunOptions::default());
    assert_eq!(rec.exit_code(), 0, "{}", rec.to_text());
    assert_eq!(rec.fields["potential"], potential_value(&inst.quiver, &lower));
}

#[test]
fn check_pbw_on_two_vertex_deformations() {
    let doc = zoo_doc("two-vertex:3,2", Some(2));
    let r = run(Command::CheckPbw, Some(&doc), &RunOptions::default());
    assert_eq!(r.exit_code(), 0, "{}", r.to_text());
    assert_eq!(r.fields["pbw2prime"]["holds"], true);

    let doc = zoo_doc("two-vertex:3,2", Some(1));
    let options = RunOptions {
        slack: Some(3),
        degree: Some(3),
        ..RunOptions::default()
    };
    let r = run(Command::CheckPbw, Some(&doc), &options);
    assert_eq!(r.exit_code(), 1);
    assert_eq!(r.fields["pbw3"][1]["witness"], "1 * a4 a3");
    assert_eq!(r.fields["oracle"]["violation"], 2);
    assert_eq!(r.fields["pbw2prime"]["holds"], false);
}

#[test]
fn fit_potential_outcomes() {
    let doc = zoo_doc("antisymmetriser:3", None);
    let r = run(Command::FitPotential, Some(&doc), &RunOptions::default());
    assert_eq!(r.exit_code(), 0, "{}", r.to_text());
    assert_eq!(r.fields["solution_dim"], 1);
    let text = "field Q\nvertex v\narrow x : v -> v\narrow y : v -> v\nrelations\n  x y\n  y x\n";
    let r = run_text(Command::FitPotential, Some(text), &RunOptions::default());
    assert_eq!(r.exit_code(), 1);
    assert_eq!(r.fields["outcome"], "infeasible");
}

#[test]
fn hilbert_and_parse_errors() {
    let text = "field Q\nvertex v\narrow x : v -> v\npotential\n  1/3 * x x x\n";
    let r = run_text(Command::Hilbert, Some(text), &degree(4));
    assert_eq!(r.to_text(), "command: hilbert\nstatus: ok\nfield: Q\nrelation_degree: 2\ntruncation: 4\ndims: [1,1,0,0,0]\n");
    let r = run_text(Command::Hilbert, Some("field Q\nvertex v\nbogus\n"), &degree(4));
    assert_eq!(r.exit_code(), 2);
    assert_eq!(r.fields["error"]["line"], 3);
    assert_eq!(r.fields["error"]["column"], 1);
}

#[test]
fn reports_are_deterministic() {
    let doc = zoo_doc("cubic-type-a:1,2", None);
    let a = run(Command::CheckCy, Some(&doc), &degree(5)).to_json();
    let b = run(Command::CheckCy, Some(&doc), &degree(5)).to_json();
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().take(3).collect();
    assert_eq!(keys, ["command", "status", "field"]);
}

#[test]
fn zoo_text_is_the_document() {
    let options = RunOptions {
        zoo: Some("two-vertex:3,2".into()),
        deformation: Some(1),
        ..RunOptions::default()
    };
    let r = run(Command::Zoo, None, &options);
    let text = r.to_text();
    assert!(text.starts_with("field F 2\nvertex 1\nvertex 2\n"));
    assert!(text.contains("deformation\n  phi a2 = 1 * a4 a3\n"));
    let bad = RunOptions {
        deformation: Some(1),
        zoo: Some("yang-mills:1".into()),
        ..RunOptions::default()
    };
    assert_eq!(run(Command::Zoo, None, &bad).status, Status::Error);
}
