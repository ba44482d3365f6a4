use ompath_core::grid::Grid;
use ompath_core::hurst::HurstParams;
use ompath_core::frac::{weighted_frac_op, OpKind, Side};
use ompath_core::kernel::kernel_value;
use ompath_core::quad::GaussLegendre;

fn main() {
    let gl = GaussLegendre::new(48);
    for h in [0.3, 0.35, 0.42, 0.48, 0.6, 0.7, 0.8] {
        let hurst = HurstParams::new(h).unwrap();
        // C0 = int_0^1 K(1,r) dr, dyadically graded toward BOTH endpoints.
        let mut c0 = 0.0;
        // [1/2, 1): grade toward 1
        for k in 1..45 {
            let lo = 1.0 - 0.5f64.powi(k);
            let hi = 1.0 - 0.5f64.powi(k + 1);
            if hi <= lo || 1.0 - hi < 1e-13 { break; }
            c0 += gl.integrate(lo, hi, |r| kernel_value(&hurst, 1.0, r).unwrap());
        }
        // (0, 1/2]: grade toward 0
        for k in 1..45 {
            let hi = 0.5f64.powi(k);
            let lo = 0.5f64.powi(k + 1);
            if hi < 1e-13 { break; }
            c0 += gl.integrate(lo, hi, |r| kernel_value(&hurst, 1.0, r).unwrap());
        }
        let alpha = hurst.alpha();
        let g_1pa = ompath_core::special::gamma_fn(1.0 + alpha).unwrap();
        // inverse-composite of K[1] equals C0*(H+1/2)/Gamma(1+alpha) * 1
        let kappa = c0 * (h + 0.5) / g_1pa;
        println!("H={h:4}: C0={c0:.9}  kappa={kappa:.9}  d_H={:.9}  kappa/d_H={:.9}", hurst.d_h(), kappa / hurst.d_h());
    }
    // End-to-end: round trip with composite / d_H at H=0.35, N=2048
    let grid = Grid::new(1.0, 2048).unwrap();
    let hurst = HurstParams::new(0.35).unwrap();
    let km = ompath_core::kernel::KernelMatrix::new(&grid, &hurst);
    let dens: Vec<f64> = grid.nodes().iter().map(|&t| (3.0 * t).cos()).collect();
    let g = km.apply(&dens);
    let dg = grid.derivative(&g);
    let alpha = hurst.alpha();
    let comp = weighted_frac_op(&grid, &dg, alpha, alpha, -alpha, Side::LeftPlus, OpKind::Integral).unwrap();
    let sup = comp.iter().zip(&dens).skip(32).map(|(a,b)| (a / hurst.d_h() - b).abs()).fold(0.0, f64::max);
    println!("H=0.35 normalized round-trip sup err (t>=T/64): {sup:.4e}");
}
