//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quartic_core::cohomology::{
    beilinson_table, cohomology_table, serre_duality_check, sheaf_ext, sheaf_ext_dim, truncated_ext, BeilinsonType,
};
use quartic_core::fixtures::jumpext_case;
use quartic_core::groebner::Gb;
use quartic_core::hilbert::{hilbert_function, hilbert_polynomial, HilbertPolynomial};
use quartic_core::homology::{tor_module, Window};
use quartic_core::mon::count_monomials;
use quartic_core::ops::{ideal_generators, ideal_matrix, ideals_equal, restrict_to_coordinates, saturate_irrelevant, tor_on_coordinates};
use quartic_core::scenarios::{h0_bounds, line_split, parse_sheaf_sum, planar_additivity};
use quartic_core::session::Env;
use quartic_core::walls::{walls, CurveChiTable, PairClass};
use quartic_core::{Field, FreeResolution, Mon, MonOrder, Poly, Presentation, Ring, Q};

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

/// `binom(m + 3, 3)` as an integer polynomial evaluation, zero when `m + 3 < 3`.
fn monomials_p3(m: i64) -> i64 {
    count_monomials(4, m) as i64
}

fn c1_resolution_shape(env: &Env<Q>) -> Check {
    let m = env.module("F2a.I").map_err(e)?;
    let shape = FreeResolution::minimal(&m, 5).betti().shape();
    ensure(shape.len() == 3, format!("length {}", shape.len()))?;
    ensure(shape == ["O", "O(-3)+2O(-2)", "O(-4)+O(-3)"], format!("{shape:?}"))?;
    Ok(shape.join(" <- "))
}

fn c2_hilbert_polynomials(env: &Env<Q>) -> Check {
    // Koszul oracle for two quadrics and the binary-form count 4d+1
    let ci = |m: i64| monomials_p3(m) - 2 * monomials_p3(m - 2) + monomials_p3(m - 4);
    let f1 = env.module("F1").map_err(e)?;
    for d in 0..10 {
        ensure(hilbert_function(&f1, d) as i64 == ci(d as i64), format!("F1 HF({d})"))?;
    }
    let cases = [
        ("F1", "4m"),
        ("F2a", "4m"),
        ("F2b", "4m"),
        ("F3", "4m"),
        ("F4", "4m+1"),
        ("F5.O_C0p_in", "3m+1"),
        ("F5.O_C0p_out", "3m+1"),
        ("F8", "4m+1"),
    ];
    let mut seen = Vec::new();
    for (name, want) in cases {
        let hp = hilbert_polynomial(&env.module(name).map_err(e)?);
        let want_hp = quartic_core::hilbert::parse_hilbert_polynomial(want).map_err(e)?;
        ensure(hp == want_hp, format!("{name}: {hp} != {want}"))?;
        seen.push(format!("{name}={hp}"));
    }
    let f8 = env.module("F8").map_err(e)?;
    for d in 0..8 {
        ensure(hilbert_function(&f8, d) == 4 * d as usize + 1, format!("F8 HF({d})"))?;
    }
    Ok(seen.join(" "))
}

fn c3_jumpext(env: &Env<Q>) -> Check {
    let mut out = Vec::new();
    for (name, want) in [("F1p", 1), ("F2a", 1), ("F2b", 2), ("F3", 2)] {
        let j = jumpext_case(&env.fixture(name).map_err(e)?).map_err(e)?;
        ensure(j.predicted_ext == j.computed_ext, format!("{name}: predictor {} vs {}", j.predicted_ext, j.computed_ext))?;
        ensure(j.computed_ext == want, format!("{name}: {} != {want}", j.computed_ext))?;
        out.push(format!("{name}->{}", j.computed_ext));
    }
    Ok(out.join(" "))
}

fn c4_serre(env: &Env<Q>) -> Check {
    let mut out = Vec::new();
    for name in ["F1p", "F2a", "F2b", "F3"] {
        let cp = env.module(&format!("{name}.p")).map_err(e)?;
        let oc = env.module(name).map_err(e)?;
        let p = serre_duality_check(&cp, &oc, 1).map_err(e)?;
        ensure(p.holds(), format!("{name}: {} vs {}", p.lhs, p.rhs))?;
        out.push(format!("{name}:{}={}", p.lhs, p.rhs));
    }
    Ok(out.join(" "))
}

fn c5_ext_on_line(env: &Env<Q>) -> Check {
    let olm1 = env.module("F5.O_Lm1").map_err(e)?;
    let mut out = Vec::new();
    for (name, split) in [("F5.O_C0p_out", [0, 4]), ("F5.O_C0p_in", [1, 3])] {
        let m = env.module(name).map_err(e)?;
        let total = sheaf_ext_dim(&m, &olm1, 1).map_err(e)?;
        let s = line_split(&m, &[2, 3], "O(-1)").map_err(e)?;
        ensure(total == 4, format!("{name}: ext1 = {total}"))?;
        ensure(s == split, format!("{name}: split {s:?}"))?;
        ensure(s[0] + s[1] == total, format!("{name}: split does not add up"))?;
        out.push(format!("{name}: 4 = {}+{}", s[0], s[1]));
    }
    Ok(out.join(", "))
}

fn same_signature(m: &Presentation<Q>, expected: &str, w: Window) -> Result<(), String> {
    let t: Presentation<Q> = parse_sheaf_sum(&m.ring, expected).map_err(e)?;
    let (hm, ht) = (hilbert_polynomial(m), hilbert_polynomial(&t));
    ensure(hm == ht, format!("HP {hm} vs {expected} {ht}"))?;
    ensure(cohomology_table(m, w) == cohomology_table(&t, w), format!("cohomology differs from {expected}"))
}

fn c6_tor_and_restriction(env: &Env<Q>) -> Check {
    let w = Window::new(-5, 5);
    let keep = [2, 3];
    let c0 = env.module("F5.O_C0").map_err(e)?;
    let pin = env.module("F5.O_C0p_in").map_err(e)?;
    same_signature(&tor_on_coordinates(&c0, &keep, 1), "O(-1)+O(-3)", w)?;
    same_signature(&tor_on_coordinates(&pin, &keep, 1), "C[0:1]+O(-2)+O(-1)", w)?;
    same_signature(&restrict_to_coordinates(&pin, &keep), "C[0:1]+O", w)?;
    // the restriction is Tor_0 computed the same way
    same_signature(&tor_on_coordinates(&pin, &keep, 0), "C[0:1]+O", w)?;
    Ok("Tor1(O_C0,O_L)~O_L(-1)+O_L(-3), Tor1(O_C0(p),O_L)~C_p+O_L(-2)+O_L(-1), O_C0(p)|L~C_p+O_L".into())
}

fn c7_e2b(env: &Env<Q>) -> Check {
    let f = env.module("F4").map_err(e)?;
    let r = sheaf_ext(&f, &f, 1).map_err(e)?;
    ensure(r.dim == 19, format!("Ext1(F,F) = {}", r.dim))?;
    Ok(format!("Ext1(F4,F4) = {} (history {:?})", r.dim, r.history))
}

fn c8_wplus(env: &Env<Q>) -> Check {
    let f = env.module("Wplus").map_err(e)?;
    let r = sheaf_ext(&f, &f, 1).map_err(e)?;
    ensure(r.dim == 17, format!("ext1(F,F) = {}", r.dim))?;
    Ok(format!("ext1(W+,W+) = {}", r.dim))
}

fn c9_planar(env: &Env<Q>) -> Check {
    let g = env.module("G").map_err(e)?;
    let g_ext = sheaf_ext_dim(&g, &g, 1).map_err(e)?;
    let g_hom = sheaf_ext_dim(&g, &g.twist(1), 0).map_err(e)?;
    ensure(g_ext == 10 && g_hom == 3, format!("G: ext1 {g_ext}, hom(G,G(1)) {g_hom}"))?;
    let p = planar_additivity(&env.module("F8plane").map_err(e)?, &env.module("F8").map_err(e)?).map_err(e)?;
    ensure(p.ext1_plane == 17 && p.hom_twist == 5 && p.ext2_plane == 0, format!("{p:?}"))?;
    ensure(p.holds() && p.ext1_space >= 22, format!("{p:?}"))?;
    Ok(format!("G: 10, 3; F8: {} + {} = {} (space {})", p.ext1_plane, p.hom_twist, p.bound(), p.ext1_space))
}

const STABLE: &[&str] = &["F4", "res4", "Wplus", "F8"];

fn c10_beilinson(env: &Env<Q>) -> Check {
    let f4 = beilinson_table(&env.module("F4").map_err(e)?).map_err(e)?;
    ensure(f4.triple() == (0, 0, 1) && f4.kind == BeilinsonType::I, format!("F4 {:?}", f4))?;
    let r4 = beilinson_table(&env.module("res4").map_err(e)?).map_err(e)?;
    ensure(r4.triple() == (1, 3, 2) && r4.kind == BeilinsonType::III, format!("res4 {:?}", r4))?;
    for name in STABLE {
        let s = beilinson_table(&env.module(name).map_err(e)?).map_err(e)?;
        ensure(s.h0_minus1 == 0 && s.h1 <= 1, format!("{name}: h0(F(-1))={} h1={}", s.h0_minus1, s.h1))?;
        ensure(s.kind != BeilinsonType::Unclassified, format!("{name} unclassified"))?;
    }
    Ok(format!("F4 {:?} type i, res4 {:?} type iii", f4.triple(), r4.triple()))
}

fn c11_h0_bounds(env: &Env<Q>) -> Check {
    let mut out = Vec::new();
    for name in STABLE {
        let b = h0_bounds(&env.module(name).map_err(e)?).map_err(e)?;
        ensure(b.within_bounds(), format!("{name}: {b:?}"))?;
        // χ = 1 ties h1 to h0
        ensure(b.h1 + 1 == b.h0, format!("{name}: h0 - h1 != 1"))?;
        out.push(format!("{name}:h0={}{}", b.h0, if b.planar { "(planar)" } else { "" }));
    }
    Ok(out.join(" "))
}

/// Independent wall enumeration straight from the slope equation.
fn brute_walls(d: i64, chi: i64) -> Vec<(Rational64, PairClass, PairClass)> {
    let t = CurveChiTable::default();
    let mut out = Vec::new();
    for d1 in 1..d {
        for chi1 in chi - 2 * d..=chi + 2 * d {
            let alpha = Rational64::new(d * chi1 - d1 * chi, d1);
            if alpha <= Rational64::from_integer(0) {
                continue;
            }
            let (d2, chi2) = (d - d1, chi - chi1);
            let ok = (1..=d2).any(|k| {
                t.chis.get(&k).is_some_and(|cs| cs.iter().any(|&c| Rational64::new(c, k) <= Rational64::new(chi2, d2)))
            });
            if ok {
                out.push((
                    alpha,
                    PairClass { d: d1, chi: chi1, has_section: false },
                    PairClass { d: d2, chi: chi2, has_section: true },
                ));
            }
        }
    }
    out.sort();
    out
}

fn c12_walls() -> Check {
    let w = walls(4, 1, None).map_err(e)?;
    ensure(w.len() == 1, format!("{} walls", w.len()))?;
    ensure(w[0].alpha == Rational64::from_integer(3), format!("alpha {}", w[0].alpha))?;
    ensure(w[0].to_string() == "alpha=3: (1,1,no-section)+(3,0,section)", w[0].to_string())?;
    let brute = brute_walls(4, 1);
    ensure(brute.len() == 1 && brute[0].0 == w[0].alpha && brute[0].1 == w[0].sub, "brute-force enumeration disagrees")?;
    for d in 1..=3 {
        ensure(walls(d, 1, None).map_err(e)?.is_empty(), format!("walls for d={d}"))?;
        ensure(brute_walls(d, 1).is_empty(), format!("brute walls for d={d}"))?;
    }
    Ok(w[0].to_string())
}

// ---- property suites ----

const CASES: usize = 100;

fn random_mon(rng: &mut ChaCha8Rng, n: usize, deg: u32) -> Mon {
    let mut e = vec![0u32; n];
    for _ in 0..deg {
        e[rng.random_range(0..n)] += 1;
    }
    Mon::from_exps(&e)
}

fn random_coef(rng: &mut ChaCha8Rng) -> Q {
    let c = rng.random_range(1..=3) as i64;
    Q::from_i64(if rng.random_bool(0.5) { c } else { -c })
}

/// Homogeneous generators: monomials, binomials or trinomials of degree 1..=maxdeg.
fn random_ideal(rng: &mut ChaCha8Rng, n: usize, ngens: std::ops::RangeInclusive<usize>, maxdeg: u32) -> Vec<Poly<Q>> {
    let k = rng.random_range(ngens);
    (0..k)
        .map(|_| {
            let deg = rng.random_range(1..=maxdeg);
            let terms = rng.random_range(1..=3);
            Poly::from_terms((0..terms).map(|_| (random_mon(rng, n, deg), random_coef(rng))).collect())
        })
        .filter(|p| !p.is_zero())
        .collect()
}

fn quotient(ring: &Ring, gens: &[Poly<Q>]) -> Presentation<Q> {
    Presentation::quotient(ring.clone(), gens).expect("homogeneous")
}

fn suite(name: &str, seed: u64, mut case: impl FnMut(&mut ChaCha8Rng) -> Result<(), String>) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..CASES {
        case(&mut rng).map_err(|m| format!("{name} case {k}: {m}"))?;
    }
    Ok(format!("{name} {CASES}/{CASES}"))
}

fn c13_properties() -> Check {
    let p3 = Ring::p3();
    let p2 = Ring::p2();
    let mut out = Vec::new();
    out.push(suite("buchberger", 1, |rng| {
        let gens = random_ideal(rng, 4, 2..=4, 3);
        for order in [MonOrder::GrevLex, MonOrder::Lex] {
            let mat = ideal_matrix(&gens);
            let gb = Gb::of_columns(&mat, order);
            ensure(gb.satisfies_buchberger(), "S-pairs do not reduce to zero")?;
            ensure(mat.cols().iter().all(|c| gb.contains_column(c)), "generator not in the span")?;
        }
        Ok(())
    })?);
    out.push(suite("resolution", 2, |rng| {
        let gens = random_ideal(rng, 4, 1..=4, 3);
        let res = FreeResolution::minimal(&quotient(&p3, &gens), 5);
        ensure(res.is_complex(), "d∘d != 0")?;
        ensure(res.is_minimal(), "unit entry in a minimal resolution")
    })?);
    out.push(suite("betti-hilbert", 3, |rng| {
        let gens = random_ideal(rng, 4, 1..=4, 3);
        let m = quotient(&p3, &gens);
        let b = FreeResolution::minimal(&m, 5).betti();
        for d in 0..=15 {
            let alt: i64 = b
                .entries
                .iter()
                .map(|(&(i, j), &v)| {
                    let s = if i % 2 == 0 { 1 } else { -1 };
                    s * v as i64 * monomials_p3((d - j) as i64)
                })
                .sum();
            ensure(alt == hilbert_function(&m, d) as i64, format!("degree {d}"))?;
        }
        ensure(HilbertPolynomial::from_betti(&b, 3) == hilbert_polynomial(&m), "polynomial from Betti numbers")
    })?);
    out.push(suite("tor-symmetry", 4, |rng| {
        let a = quotient(&p2, &random_ideal(rng, 3, 1..=3, 2));
        let b = quotient(&p2, &random_ideal(rng, 3, 1..=3, 2));
        let w = Window::new(0, 6);
        for i in 0..=3 {
            let ab = tor_module(&a, &b, i, w).map_err(e)?;
            let ba = tor_module(&b, &a, i, w).map_err(e)?;
            ensure(ab.dims == ba.dims, format!("Tor_{i}: {:?} vs {:?}", ab.dims, ba.dims))?;
        }
        Ok(())
    })?);
    out.push(suite("euler", 5, |rng| {
        let gens = random_ideal(rng, 4, 1..=3, 3);
        let m = quotient(&p3, &gens).twist(rng.random_range(-1..=1));
        let hp = hilbert_polynomial(&m);
        let w = Window::new(-3, 3);
        let t = cohomology_table(&m, w);
        for d in w.degrees() {
            ensure(Q::from_i64(t.euler(d).unwrap_or(i64::MIN)) == hp.eval(d as i64), format!("twist {d}"))?;
        }
        Ok(())
    })?);
    out.push(suite("truncation-stability", 6, |rng| {
        let a = quotient(&p2, &random_ideal(rng, 3, 1..=2, 2));
        let b = quotient(&p2, &random_ideal(rng, 3, 1..=2, 2));
        let i = rng.random_range(0..=2);
        let r = sheaf_ext(&a, &b, i).map_err(e)?;
        for extra in [3, 4] {
            let v = truncated_ext(&a, &b, i, r.e + extra);
            ensure(v == r.dim, format!("Ext^{i}: e={} gives {v}, stable value {}", r.e + extra, r.dim))?;
        }
        Ok(())
    })?);
    out.push(suite("saturation", 7, |rng| {
        let gens = random_ideal(rng, 4, 1..=4, 3);
        let s1 = saturate_irrelevant(&quotient(&p3, &gens)).map_err(e)?;
        let s2 = saturate_irrelevant(&s1).map_err(e)?;
        let (g1, g2) = (ideal_generators(&s1).map_err(e)?, ideal_generators(&s2).map_err(e)?);
        ensure(ideals_equal(&g1, &g2), "saturating twice changed the ideal")?;
        // saturation only removes finite-length torsion
        ensure(hilbert_polynomial(&s1) == hilbert_polynomial(&quotient(&p3, &gens)), "Hilbert polynomial changed")
    })?);
    Ok(out.join(", "))
}

fn main() -> ExitCode {
    let env: Env<Q> = Env::new(None);
    let criteria: Vec<Criterion> = vec![
        ("1 resolution shape of a line plus cubic", Box::new(|| c1_resolution_shape(&env))),
        ("2 Hilbert polynomials", Box::new(|| c2_hilbert_polynomials(&env))),
        ("3 Ext^1(C_p, O_C) jump and rank predictor", Box::new(|| c3_jumpext(&env))),
        ("4 Serre duality for (C_p, O_C)", Box::new(|| c4_serre(&env))),
        ("5 Ext^1(O_C0(p), O_L(-1)) and its split", Box::new(|| c5_ext_on_line(&env))),
        ("6 Tor_1 and restriction to the line", Box::new(|| c6_tor_and_restriction(&env))),
        ("7 Ext^1(F,F) for the 2x5 presentation", Box::new(|| c7_e2b(&env))),
        ("8 ext^1(F,F) on the extension fixture", Box::new(|| c8_wplus(&env))),
        ("9 planar Ext suite", Box::new(|| c9_planar(&env))),
        ("10 Beilinson classification", Box::new(|| c10_beilinson(&env))),
        ("11 h^0 bounds", Box::new(|| c11_h0_bounds(&env))),
        ("12 walls", Box::new(c12_walls)),
        ("13 property suites", Box::new(c13_properties)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let t = Instant::now();
        let outcome = run();
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS [{name}] {detail} ({ms} ms)"),
            Err(why) => {
                failed += 1;
                println!("FAIL [{name}] {why} ({ms} ms)");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
