use pinterp_core::modular::{theta_all, UpperHalfPoint};
use num_complex::Complex64;
fn lam_direct(z: Complex64) -> Complex64 {
    // raw series, valid for decent im
    let q = (Complex64::i()*std::f64::consts::PI*z).exp();
    let q4 = (Complex64::i()*std::f64::consts::PI*z/4.0).exp();
    let mut t3 = Complex64::new(1.0,0.0);
    let mut t2c = Complex64::new(1.0,0.0);
    for n in 1..200i64 {
        t3 += 2.0*q.powi((n*n).min(10000) as i32);
        t2c += q.powi((n*(n+1)).min(10000) as i32);
    }
    let t2 = 2.0*q4*t2c;
    (t2/t3).powi(4)
}
fn main() {
    for &(re, im) in &[(0.3, 1.2), (0.3, 0.4), (-0.7, 0.25), (1.4, 0.9)] {
        let z = Complex64::new(re, im);
        let (t2, t3, _) = theta_all(UpperHalfPoint::new(re, im).unwrap());
        let lam = (t2/t3).powi(4);
        let lam_d = lam_direct(z);
        let (p2, p3, _) = theta_all(UpperHalfPoint::new(re+1.0, im).unwrap());
        let lam_p = (p2/p3).powi(4);
        let lam_pd = lam_direct(z + Complex64::new(1.0,0.0));
        println!("z={re}+{im}i lam={lam:.10} direct={lam_d:.10}");
        println!("   lam(z+1)={lam_p:.10} direct={lam_pd:.10} law={:.10}", lam/(lam-1.0));
    }
}
