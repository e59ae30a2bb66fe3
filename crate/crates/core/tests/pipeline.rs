//! One pass through the public API the way a caller would use it: build
//! the witnesses of a triple, check their kill set, mix face states,
//! certify a decomposition, and walk a segment out to the PPT boundary.

use trisep::faces::{decompose, TenStateBasis, Verdict, FACE_TOL};
use trisep::pptlab::{extend_segment, is_ppt};
use trisep::witness::pairing;
use trisep::{Tolerances, Triple};

#[test]
fn witness_to_certificate_to_boundary() {
    let u = 1.8;
    let triple = Triple::WCA;
    let tol = Tolerances::default();

    // the ten kill vectors pair to zero with each witness of the triple
    let witnesses = triple.witnesses(u).unwrap();
    let basis = TenStateBasis::new(triple, u).unwrap();
    for vector in basis.vectors() {
        let t = vector.tensor();
        for w in &witnesses {
            assert!(w.kill_value(&t).unwrap().abs() < 1e-10);
        }
    }

    // an interior mixture decomposes back to its own weights
    let mut weights = vec![0.08; 10];
    weights[4] = 0.28;
    let rho = basis.mix(&weights).unwrap();
    let cert = decompose(&rho, &basis, FACE_TOL).unwrap();
    assert_eq!(cert.verdict, Verdict::InFaceSeparable);
    for (got, want) in cert.weights.iter().zip(&weights) {
        assert!((got - want).abs() < 1e-10);
    }
    for w in &witnesses {
        assert!(pairing(w, &rho, &tol).unwrap().abs() < 1e-10);
    }

    // extending through a maximal face yields certified PPT entanglement
    let rho0 = basis.mix(&vec![0.1; 10]).unwrap();
    let mut face = vec![1.0 / 9.0; 10];
    face[1] = 0.0;
    let rho1 = basis.mix(&face).unwrap();
    let segment = extend_segment(&rho0, &rho1, &basis, 64.0, 1e-8).unwrap();
    assert!(segment.t_star > 1.0 + 1e-4);
    let certified = segment.ppt_entangled_probes();
    assert!(!certified.is_empty());
    for probe in certified {
        let state = &rho0.scale_re(1.0 - probe.t) + &rho1.scale_re(probe.t);
        assert!(is_ppt(&state, &tol).unwrap());
        assert_eq!(probe.certificate.verdict, Verdict::CertifiedEntangled);
    }
}
