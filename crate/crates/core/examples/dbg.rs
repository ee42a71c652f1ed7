use pspectra::comparison::*;
use pspectra::radial::*;
use pspectra::{PotentialSpec, StateLabel};
use std::time::Instant;
fn main() {
    let a: Vec<f64> = std::env::args().skip(1).map(|s| s.parse().unwrap()).collect();
    let (p, q, dim) = (a[0], a[1], a[2] as u32);
    let t = Instant::now();
    let r = solve_eigenvalue(&PotentialSpec::power(p, 1.0).unwrap(), StateLabel::ground(dim), 1e-10).unwrap();
    println!("E_p {} pts {} {:?}", r.energy, r.mesh_points, t.elapsed());
    let t = Instant::now();
    let c = crossing_construction(p, q, dim, r.energy).unwrap();
    println!("construct {:?} {:?} {:?}", c.path, t.elapsed(), c);
    let v1 = c.comparison_potential();
    let v2 = move |r: f64| q.signum() * r.powf(q);
    let t = Instant::now();
    let rep = find_crossings(&v1, &v2, dim, c.r_hat * 1e3).unwrap();
    println!("crossings {:?} {:?} {:?}", rep.crossings, rep.area_residual.zip(rep.area_scale), t.elapsed());
    let t = Instant::now();
    let psi = ground_wavefunction(&PotentialSpec::power(q, 1.0).unwrap(), dim, 0, 1e-9).unwrap();
    println!("psi {:?}", t.elapsed());
    let k = k_profile(&v2, &v1, &psi, dim).unwrap();
    println!("kmax {} {:?}", k.max(), t.elapsed());
}
