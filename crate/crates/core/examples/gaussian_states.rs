//! Williamson decomposition and the Chernoff bound between Gaussian states.

use nalgebra::DMatrix;
use qradar::gaussian::{qcb_bin, qcb_term, validate_state, williamson, GaussianState, SSearch};

fn main() {
    // Two-mode squeezed thermal state with r = 0.5 on top of N = 0.3 noise.
    let (c, s) = ((1.0f64).cosh(), (1.0f64).sinh());
    let n = 2.0 * 0.3 + 1.0;
    let mut cov = DMatrix::<f64>::zeros(4, 4);
    for i in 0..4 {
        cov[(i, i)] = n * c;
    }
    cov[(0, 2)] = n * s;
    cov[(2, 0)] = n * s;
    cov[(1, 3)] = -n * s;
    cov[(3, 1)] = -n * s;

    let spec = williamson(&cov).unwrap();
    let (recon, sympl) = spec.residuals(&cov);
    println!("symplectic eigenvalues {:?}", spec.eigenvalues);
    println!("reconstruction residual {recon:.2e}, symplecticity residual {sympl:.2e}");

    let state = GaussianState::new(nalgebra::DVector::zeros(4), cov).unwrap();
    let d = validate_state(&state);
    println!("physical: {} (min eigenvalue {:.6})", d.physical, d.min_symplectic_eigenvalue);

    // Coherent state against vacuum: the bound is ½e^{−|α|²} at s = ½.
    let alpha = (0.8, -0.3);
    let coh = GaussianState::coherent(alpha.0, alpha.1);
    let vac = GaussianState::vacuum(1);
    let best = qcb_bin(&coh, &vac, &SSearch::default()).unwrap();
    let exact = 0.5 * (-(alpha.0 * alpha.0 + alpha.1 * alpha.1)).exp();
    println!("coherent vs vacuum: {:.10} (s* = {:.4}), closed form {exact:.10}", best.bound_value, best.optimal_s);

    let hot = GaussianState::thermal(1, 0.5);
    for s in [0.1, 0.3, 0.5, 0.7, 0.9] {
        println!("s = {s}: Q_s(thermal, vacuum) = {:.6}", qcb_term(&hot, &vac, s).unwrap());
    }
}
