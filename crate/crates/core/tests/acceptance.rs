//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use num_rational::BigRational;
use num_traits::{One, Zero};

use repind::cli;
use repind::exact::{int, rat, to_f64};
use repind::ladder::{
    check_coefficient_ratios, check_intertwining, check_negative_m, compute_norm, degeneracy, eigenstate_residual,
    energy, factorization_residual, laguerre_identify, run_chain, sector_energy,
};
use repind::opcore::catalog::{catalog, check};
use repind::radial::Dim;
use repind::verify::{differential_oracle, ode_residual_with, orthonormality_matrix, OdeForm};
use repind::wavefn::{compare_routes, full_wavefunction};

const ORACLE_TOL: f64 = 1e-9;
const NORM_TOL: f64 = 1e-10;
const ORTHO_TOL: f64 = 1e-9;
const ODE_TOL: f64 = 1e-10;
const DIMS: [Dim; 2] = [Dim::Two, Dim::Three];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fact(n: i64) -> BigRational {
    (1..=n).fold(BigRational::one(), |acc, k| acc * int(k))
}

/// `L_m^α` by the three-term recurrence
/// `(k+1)L_{k+1} = (2k+1+α−x)L_k − (k+α)L_{k−1}`.
fn laguerre_by_recurrence(alpha: i64, m: usize) -> Vec<BigRational> {
    let mut prev = vec![BigRational::one()];
    if m == 0 {
        return prev;
    }
    let mut cur = vec![int(1 + alpha), int(-1)];
    for k in 1..m as i64 {
        let mut next = vec![BigRational::zero(); cur.len() + 1];
        for (j, c) in cur.iter().enumerate() {
            next[j] += c * int(2 * k + 1 + alpha);
            next[j + 1] -= c;
        }
        for (j, c) in prev.iter().enumerate() {
            next[j] -= c * int(k + alpha);
        }
        for c in next.iter_mut() {
            *c /= int(k + 1);
        }
        prev = cur;
        cur = next;
    }
    cur
}

fn c1_catalog() -> Outcome {
    let ids = catalog();
    let mut worst: f64 = 0.0;
    for id in &ids {
        let rep = check(id).map_err(|e| e.to_string())?;
        ensure(rep.holds, || format!("{} has {} residual terms", id.key, rep.residual_terms()))?;
        let o = differential_oracle(id, 42).map_err(|e| e.to_string())?;
        ensure(o.residual < ORACLE_TOL, || format!("{} oracle residual {:.2e}", id.key, o.residual))?;
        worst = worst.max(o.residual);
    }
    Ok(format!("{} identities, exact residual 0, worst oracle residual {worst:.1e} < {ORACLE_TOL:e}", ids.len()))
}

fn c2_factorization() -> Outcome {
    for dim in DIMS {
        for s in 0..=8 {
            let f = factorization_residual(dim, s, &sector_energy(dim, s)).map_err(|e| e.to_string())?;
            ensure(f.is_zero(), || format!("{dim} s={s} factorization residual {f}"))?;
            let i = check_intertwining(dim, s).map_err(|e| e.to_string())?;
            ensure(i.intertwining.is_zero(), || format!("{dim} s={s} intertwining residual {}", i.intertwining))?;
            ensure(i.wrong_order.is_zero(), || format!("{dim} s={s} wrong-order residual {}", i.wrong_order))?;
        }
    }
    Ok("dims 2,3, sectors 0..=8: factorization, intertwining and wrong-order products exact".into())
}

fn c3_chains() -> Outcome {
    let mut count = 0;
    for dim in DIMS {
        for n in 1..=8u32 {
            for s in 0..n as i64 {
                let chain = run_chain(dim, n, s).map_err(|e| e.to_string())?;
                let r = check_coefficient_ratios(&chain);
                ensure(r.holds(), || format!("{dim} n={n} s={s} ratio mismatches {:?}", r.mismatches))?;
                let alpha = match dim {
                    Dim::Three => 2 * s + 1,
                    Dim::Two => 2 * s,
                };
                let a = laguerre_by_recurrence(alpha, chain.degree() as usize);
                let c = &chain.b_coeffs[0] / &a[0];
                ensure(chain.b_coeffs.iter().zip(&a).all(|(b, a)| *b == &c * a), || {
                    format!("{dim} n={n} s={s} not proportional to L^({alpha})")
                })?;
                let m = laguerre_identify(&chain).map_err(|e| e.to_string())?;
                ensure(m.holds() && m.proportionality == c, || format!("{dim} n={n} s={s} C' mismatch"))?;
                if dim == Dim::Three {
                    let (n, l) = (n as i64, s);
                    let top =
                        rat(1, 2).pow((n - l - 1) as i32) * fact(l) * fact(2 * n - 1) / (fact(n - 1) * fact(n + l));
                    ensure(chain.b_coeffs.last() == Some(&top), || format!("3d n={n} l={l} top coefficient"))?;
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} chains with n <= 8: ratio laws, C' x Laguerre and top coefficients exact"))
}

fn c4_norms() -> Outcome {
    for dim in DIMS {
        for n in 1..=8u32 {
            for s in 0..n as i64 {
                let c = compute_norm(dim, n, s).map_err(|e| e.to_string())?;
                ensure(c.agree(), || {
                    format!("{dim} n={n} s={s}: product {} vs closed {}", c.product_form, c.closed_form)
                })?;
                // Π (E_{n−1} − E_k) in units of e²/a₀
                let kappa = |k: i64| match dim {
                    Dim::Three => int(k + 1),
                    Dim::Two => rat(2 * k + 1, 2),
                };
                let e = |k: i64| -(kappa(k) * kappa(k) * int(2)).recip();
                let product = (s..=n as i64 - 2).fold(BigRational::one(), |acc, k| acc * (e(n as i64 - 1) - e(k)));
                ensure(c.product.rational == product, || format!("{dim} n={n} s={s}: energy product"))?;
            }
        }
    }
    Ok("n <= 8, both dims: product form equals closed form exactly ((-1)!! = 1)".into())
}

fn c5_negative_m() -> Outcome {
    let mut count = 0;
    for n in 1..=6u32 {
        for m in 0..n {
            let r = check_negative_m(n, m).map_err(|e| e.to_string())?;
            ensure(r.holds(), || format!("n={n} |m|={m}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} (n, |m|) pairs with n <= 6: operator, state and normalized equality exact"))
}

fn c6_spectra() -> Outcome {
    let e3 = |n| energy(Dim::Three, n).map(|e| e.rational).map_err(|e| e.to_string());
    let e2 = |n| energy(Dim::Two, n).map(|e| e.rational).map_err(|e| e.to_string());
    ensure(e3(1)? == rat(-1, 2), || "3d E(1)".into())?;
    ensure(e3(2)? == rat(-1, 8), || "3d E(2)".into())?;
    ensure(e2(1)? == int(-2), || "2d E(1)".into())?;
    for n in 1..=6u32 {
        let target = energy(Dim::Three, n).map_err(|e| e.to_string())?;
        let states3 = (0..n as i64)
            .filter(|&l| eigenstate_residual(Dim::Three, n, l, &target).is_ok_and(|r| r.is_zero()))
            .count();
        ensure(states3 as u32 == n && degeneracy(Dim::Three, n) == n, || format!("3d degeneracy n={n}"))?;
        let target = energy(Dim::Two, n).map_err(|e| e.to_string())?;
        let positive =
            (0..n as i64).filter(|&m| eigenstate_residual(Dim::Two, n, m, &target).is_ok_and(|r| r.is_zero())).count();
        let negative = (1..n).filter(|&m| check_negative_m(n, m).is_ok_and(|r| r.holds())).count();
        ensure((positive + negative) as u32 == 2 * n - 1 && degeneracy(Dim::Two, n) == 2 * n - 1, || {
            format!("2d degeneracy n={n}")
        })?;
    }
    Ok("E3(1) = -1/2, E3(2) = -1/8, E2(1) = -2 (e^2/a0); degeneracies n and 2n-1 for n <= 6".into())
}

fn c7_wavefunctions() -> Outcome {
    let (mut norm_err, mut ortho_err, mut ode_err): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for dim in DIMS {
        let lo = if dim == Dim::Two { -5 } else { 0 };
        for s in lo..6i64 {
            let g = orthonormality_matrix(dim, s, 6).map_err(|e| e.to_string())?;
            for (i, row) in g.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if i == j {
                        norm_err = norm_err.max((v - 1.0).abs());
                    } else {
                        ortho_err = ortho_err.max(v.abs());
                    }
                }
            }
        }
        for n in 1..=6u32 {
            let lo = if dim == Dim::Two { -(n as i64 - 1) } else { 0 };
            for s in lo..n as i64 {
                let m = if dim == Dim::Two { s } else { 0 };
                let wf = full_wavefunction(dim, n, s, m).map_err(|e| e.to_string())?;
                let e = to_f64(&wf.energy().rational);
                for form in [OdeForm::Standard, OdeForm::Reduced] {
                    ode_err = ode_err.max(ode_residual_with(&wf, form, e).residual);
                }
                let nodes = wf.node_count();
                ensure(nodes as i64 == n as i64 - s.abs() - 1, || format!("{dim} n={n} s={s}: {nodes} nodes"))?;
            }
        }
    }
    ensure(norm_err < NORM_TOL, || format!("normalization error {norm_err:.2e}"))?;
    ensure(ortho_err < ORTHO_TOL, || format!("orthogonality error {ortho_err:.2e}"))?;
    ensure(ode_err < ODE_TOL, || format!("ODE residual {ode_err:.2e}"))?;
    Ok(format!(
        "n <= 6: |<psi|psi>-1| {norm_err:.1e} < {NORM_TOL:e}, overlaps {ortho_err:.1e} < {ORTHO_TOL:e}, ODE {ode_err:.1e} < {ODE_TOL:e}, nodes n-|s|-1"
    ))
}

fn c8_two_routes() -> Outcome {
    let mut count = 0;
    for dim in DIMS {
        for n in 1..=8u32 {
            let lo = if dim == Dim::Two { -(n as i64 - 1) } else { 0 };
            for s in lo..n as i64 {
                let m = if dim == Dim::Two { s } else { 0 };
                let cmp = compare_routes(dim, n, s, m).map_err(|e| e.to_string())?;
                ensure(cmp.agree(), || format!("{dim} n={n} s={s}: powers {:?} differ", cmp.mismatched_powers))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} states with n <= 8: ladder-assembled and closed-form coefficients exactly equal"))
}

fn c9_determinism() -> Outcome {
    let run = || {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cli::run(["repind", "check", "all", "--seed", "42"], &mut out, &mut err);
        (code, out)
    };
    let (c1, a) = run();
    let (c2, b) = run();
    ensure(c1 == 0 && c2 == 0, || format!("exit codes {c1}, {c2}"))?;
    ensure(a == b, || "reports differ between runs".into())?;
    let digest = a.iter().fold(0u64, |h, &x| h.wrapping_mul(1_099_511_628_211).wrapping_add(x as u64));
    Ok(format!("check all --seed 42 twice: {} identical bytes (fnv-style digest {digest:016x})", a.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("identity catalog", c1_catalog),
        ("factorization and intertwining", c2_factorization),
        ("chain/Laguerre equivalence", c3_chains),
        ("normalization", c4_norms),
        ("negative-m equivalence", c5_negative_m),
        ("spectra", c6_spectra),
        ("wavefunction oracles", c7_wavefunctions),
        ("two-route agreement", c8_two_routes),
        ("determinism", c9_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let result = f();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {} [{name}]: PASS in {secs:.1}s ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL in {secs:.1}s ({why})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
