use h1cut::certificate::{check_certificate, verify_certificate, CertificateFailure, WitnessCertificate};
use h1cut::homology::{coboundary_of_potential, EdgeValues};
use h1cut::library::{generate, GeneratorSpec};
use h1cut::witness::construct_witness;

fn torus_certificate() -> WitnessCertificate {
    construct_witness(&generate(GeneratorSpec::Torus2).unwrap()).unwrap()
}

#[test]
fn fresh_certificate_verifies_and_round_trips() {
    let cert = torus_certificate();
    assert!(verify_certificate(&cert));
    assert_eq!(cert.subdivision_depth, 2);
    assert_eq!(cert.cut.boundary_components, 2);
    assert!(!cert.cut.cuts);
    let text = cert.to_json();
    let back = WitnessCertificate::from_json(&text).unwrap();
    assert_eq!(back, cert);
    assert_eq!(back.to_json(), text);
}

#[test]
fn removing_a_facet_is_detected() {
    let mut cert = torus_certificate();
    cert.domain.remove(cert.domain.len() / 2);
    assert!(!verify_certificate(&cert));
}

#[test]
fn coboundary_is_rejected() {
    let mut cert = torus_certificate();
    let k = generate(GeneratorSpec::Torus2).unwrap();
    let g: Vec<i64> = (0..7).collect();
    cert.cocycle = Some(EdgeValues::new(&k, &coboundary_of_potential(&k, &g).values));
    assert_eq!(check_certificate(&cert), Err(CertificateFailure::Coboundary));
}

#[test]
fn other_tampering_is_detected() {
    let base = torus_certificate();

    let mut cert = base.clone();
    cert.pairing_value = cert.pairing_value.map(|v| v + 1);
    assert!(matches!(check_certificate(&cert), Err(CertificateFailure::Pairing { .. })));

    let mut cert = base.clone();
    cert.base_complex_hash = "00".repeat(32);
    assert_eq!(check_certificate(&cert), Err(CertificateFailure::Hash));

    let mut cert = base.clone();
    cert.cut.boundary_components = 3;
    assert_eq!(check_certificate(&cert), Err(CertificateFailure::Verdicts));

    let mut cert = base.clone();
    cert.cut.boundary_digest = "ff".repeat(32);
    assert_eq!(check_certificate(&cert), Err(CertificateFailure::Verdicts));

    let mut cert = base.clone();
    cert.subdivision_depth = 1;
    assert!(!verify_certificate(&cert));

    let mut cert = base.clone();
    cert.loop_cycle = None;
    assert_eq!(check_certificate(&cert), Err(CertificateFailure::Incomplete));

    let mut cert = base.clone();
    cert.format = "other".into();
    assert!(matches!(check_certificate(&cert), Err(CertificateFailure::Format(_))));

    let mut cert = base;
    cert.domain.swap(0, 1);
    assert_eq!(check_certificate(&cert), Err(CertificateFailure::UnsortedDomain));
}

#[test]
fn malformed_json_is_an_error() {
    let text = torus_certificate().to_json();
    assert!(WitnessCertificate::from_json(&text[..text.len() / 2]).is_err());
}
