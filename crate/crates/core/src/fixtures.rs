//! Named fixtures: explicit ideals, matrices and sheaves, each self-checked on load.
//!
//! Most fixtures are hand-entered. Three are computed: the binary-form module `F8`
//! (relations from degree-wise kernels), the extension sheaf `Wplus` (a mapping cone
//! on a nonzero extension class) and the `Omega` modules (Koszul syzygies).

use std::collections::BTreeMap;

use crate::cohomology::{omega_twisted, sheaf_ext, sheaf_ext_dim};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hilbert::{hilbert_function, hilbert_polynomial, HilbertPolynomial};
use crate::homology::{dual_matrix, tensor_map_images, Pieces};
use crate::linalg::{nullspace, rank_dense, Echelon, SparseVec};
use crate::matrix::{Column, GradedMatrix};
use crate::module::Presentation;
use crate::mon::{monomials_of_degree, Mon};
use crate::ops::{annihilator, ideals_equal, truncate};
use crate::parse::parse_poly;
use crate::poly::{Poly, Ring};
use crate::resolution::FreeResolution;

/// An object stored in a fixture.
#[derive(Clone, Debug)]
pub enum Object<K> {
    Module(Presentation<K>),
    Matrix(GradedMatrix<K>),
    Ideal(Vec<Poly<K>>),
    Point(Vec<i64>),
}

#[derive(Clone, Debug)]
pub struct Fixture<K> {
    pub name: String,
    pub ring: Ring,
    /// key of the module returned by `main_module`
    pub main: String,
    pub objects: BTreeMap<String, Object<K>>,
    pub citation: String,
}

impl<K: Field> Fixture<K> {
    fn new(name: &str, ring: Ring, main: &str, citation: &str) -> Self {
        Fixture {
            name: name.to_string(),
            ring,
            main: main.to_string(),
            objects: BTreeMap::new(),
            citation: citation.to_string(),
        }
    }

    fn put(&mut self, key: &str, o: Object<K>) {
        self.objects.insert(key.to_string(), o);
    }

    fn get(&self, key: &str) -> Result<&Object<K>> {
        self.objects.get(key).ok_or_else(|| Error::Unknown(format!("{}.{key}", self.name)))
    }

    pub fn module(&self, key: &str) -> Result<&Presentation<K>> {
        match self.get(key)? {
            Object::Module(m) => Ok(m),
            _ => Err(Error::Invalid(format!("{}.{key} is not a module", self.name))),
        }
    }

    pub fn matrix(&self, key: &str) -> Result<&GradedMatrix<K>> {
        match self.get(key)? {
            Object::Matrix(m) => Ok(m),
            _ => Err(Error::Invalid(format!("{}.{key} is not a matrix", self.name))),
        }
    }

    pub fn ideal(&self, key: &str) -> Result<&[Poly<K>]> {
        match self.get(key)? {
            Object::Ideal(m) => Ok(m),
            _ => Err(Error::Invalid(format!("{}.{key} is not an ideal", self.name))),
        }
    }

    pub fn point(&self, key: &str) -> Result<&[i64]> {
        match self.get(key)? {
            Object::Point(p) => Ok(p),
            _ => Err(Error::Invalid(format!("{}.{key} is not a point", self.name))),
        }
    }

    pub fn main_module(&self) -> &Presentation<K> {
        self.module(&self.main).expect("main module present")
    }
}

/// Canonical fixture names.
pub const FIXTURE_NAMES: &[&str] =
    &["F1", "F1p", "F2a", "F2b", "F3", "F4", "F5", "F6", "F7", "F8", "F8plane", "G", "res4", "Wplus"];

const ALIASES: &[(&str, &str)] = &[
    ("elliptic_ci", "F1"),
    ("elliptic_ci_pointed", "F1p"),
    ("line_cubic_regular", "F2a"),
    ("line_cubic_singular", "F2b"),
    ("doubleline_conic", "F3"),
    ("e2b_sheaf", "F4"),
    ("oc0p", "F5"),
    ("omega", "F6"),
    ("standards", "F7"),
    ("nodal_quartic_pushforward", "F8"),
    ("nodal_quartic_plane", "F8plane"),
    ("planar_cubic_sheaf", "G"),
    ("resolution4_planar", "res4"),
    ("wplus", "Wplus"),
];

pub fn canonical_name(name: &str) -> Option<&'static str> {
    FIXTURE_NAMES
        .iter()
        .copied()
        .find(|n| *n == name)
        .or_else(|| ALIASES.iter().find(|(a, _)| *a == name).map(|(_, n)| *n))
}

fn p<K: Field>(ring: &Ring, s: &str) -> Poly<K> {
    parse_poly(s, ring).unwrap_or_else(|e| panic!("fixture literal '{s}': {e}"))
}

fn ideal<K: Field>(ring: &Ring, gens: &[&str]) -> Vec<Poly<K>> {
    gens.iter().map(|s| p(ring, s)).collect()
}

fn matrix<K: Field>(ring: &Ring, target: &[i32], source: &[i32], rows: &[&[&str]]) -> Result<GradedMatrix<K>> {
    let rows: Vec<Vec<Poly<K>>> = rows.iter().map(|r| r.iter().map(|s| p(ring, s)).collect()).collect();
    let m = GradedMatrix::from_rows(target.to_vec(), source.to_vec(), rows);
    m.check_degrees()?;
    Ok(m)
}

fn quotient<K: Field>(ring: &Ring, gens: &[&str]) -> Result<Presentation<K>> {
    Presentation::quotient(ring.clone(), &ideal(ring, gens))
}

/// Linear generators of the ideal of a point `[a_0 : ... : a_n]`.
pub fn point_ideal<K: Field>(coords: &[i64]) -> Vec<Poly<K>> {
    let n = coords.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let f = Poly::var(i).scale(&K::from_i64(coords[j])).sub(&Poly::var(j).scale(&K::from_i64(coords[i])));
            if !f.is_zero() {
                out.push(f);
            }
        }
    }
    out
}

pub fn point_module<K: Field>(ring: &Ring, coords: &[i64]) -> Result<Presentation<K>> {
    if coords.len() != ring.nvars() || coords.iter().all(|&c| c == 0) {
        return Err(Error::Invalid(format!("{coords:?} is not a point of P^{}", ring.nvars() - 1)));
    }
    Ok(Presentation::quotient(ring.clone(), &point_ideal(coords))?.prune())
}

pub fn point_coords<K: Field>(coords: &[i64]) -> Vec<K> {
    coords.iter().map(|&c| K::from_i64(c)).collect()
}

fn check_hp<K: Field>(fx: &str, what: &str, m: &Presentation<K>, coeffs: &[i64]) -> Result<()> {
    let hp = hilbert_polynomial(m);
    let want = HilbertPolynomial::from_ints(coeffs);
    if hp != want {
        return Err(Error::SelfCheck(format!("{fx}.{what}: Hilbert polynomial {hp}, expected {want}")));
    }
    Ok(())
}

fn check_complex<K: Field>(fx: &str, a: &GradedMatrix<K>, b: &GradedMatrix<K>) -> Result<()> {
    if !a.mul(b).is_zero() {
        return Err(Error::SelfCheck(format!("{fx}: matrix product is not zero")));
    }
    Ok(())
}

/// Loads a fixture by canonical name or alias and runs its self-checks.
pub fn load_fixture<K: Field>(name: &str) -> Result<Fixture<K>> {
    let canon = canonical_name(name).ok_or_else(|| Error::Unknown(format!("fixture {name}")))?;
    match canon {
        "F1" => f1(),
        "F1p" => f1p(),
        "F2a" => line_cubic("F2a", "w^2", "y^2", "line and cubic, the point off the singular locus"),
        "F2b" => line_cubic("F2b", "y^2+z*w", "z^2", "line and cubic, singular point on the line"),
        "F3" => f3(),
        "F4" => f4(),
        "F5" => f5(),
        "F6" => f6(),
        "F7" => f7(),
        "F8" => f8(true),
        "F8plane" => f8(false),
        "G" => planar_cubic_sheaf(),
        "res4" => res4(),
        "Wplus" => wplus(),
        _ => unreachable!(),
    }
}

fn f1<K: Field>() -> Result<Fixture<K>> {
    let r = Ring::p3();
    let mut fx = Fixture::new("F1", r.clone(), "O_C", "complete intersection of two quadrics");
    let i = ideal::<K>(&r, &["x^2+y^2+z^2+w^2", "x*y+z*w"]);
    let m = Presentation::quotient(r.clone(), &i)?;
    check_hp("F1", "O_C", &m, &[0, 4])?;
    let delta = matrix(&r, &[2, 2, 3], &[3, 4], &[&["0", "-(x*y+z*w)"], &["0", "x^2+y^2+z^2+w^2"], &["1", "0"]])?;
    fx.put("I", Object::Ideal(i));
    fx.put("O_C", Object::Module(m));
    fx.put("delta", Object::Matrix(delta));
    Ok(fx)
}

/// A smooth complete intersection of two quadrics through `[0:0:0:1]`; the quadrics
/// of `F1` have no rational points, so the point-dependent checks use this one.
fn f1p<K: Field>() -> Result<Fixture<K>> {
    let r = Ring::p3();
    let mut fx = Fixture::new("F1p", r.clone(), "O_C", "complete intersection of two quadrics with a rational point");
    let (q1, q2) = ("x*w+y^2+z^2", "y*w+x^2-z^2");
    let i = ideal::<K>(&r, &[q1, q2]);
    let m = Presentation::quotient(r.clone(), &i)?;
    check_hp("F1p", "O_C", &m, &[0, 4])?;
    let neg_q2 = format!("-({q2})");
    let delta = matrix(&r, &[2, 2, 3], &[3, 4], &[&["0", neg_q2.as_str()], &["0", q1], &["1", "0"]])?;
    fx.put("I", Object::Ideal(i));
    fx.put("O_C", Object::Module(m));
    fx.put("delta", Object::Matrix(delta));
    fx.put("p", Object::Point(vec![0, 0, 0, 1]));
    Ok(fx)
}

/// `I = <xy, xz, y q1 + z q2>` with its syzygy matrix.
fn line_cubic<K: Field>(name: &str, q1: &str, q2: &str, citation: &str) -> Result<Fixture<K>> {
    let r = Ring::p3();
    let mut fx = Fixture::new(name, r.clone(), "O_C", citation);
    let cubic = format!("y*({q1})+z*({q2})");
    let i = ideal::<K>(&r, &["x*y", "x*z", cubic.as_str()]);
    let m = Presentation::quotient(r.clone(), &i)?;
    check_hp(name, "O_C", &m, &[0, 4])?;
    let (a, b) = (format!("-({q1})"), format!("-({q2})"));
    let delta = matrix(&r, &[2, 2, 3], &[4, 3], &[&[a.as_str(), "z"], &[b.as_str(), "-y"], &["x", "0"]])?;
    check_complex(name, &ideal_row(&i), &delta)?;
    fx.put("I", Object::Ideal(i));
    fx.put("O_C", Object::Module(m));
    fx.put("delta", Object::Matrix(delta));
    fx.put("I_L", Object::Ideal(ideal(&r, &["y", "z"])));
    fx.put("I_C0", Object::Ideal(vec![p(&r, "x"), p(&r, &cubic)]));
    fx.put("p", Object::Point(vec![0, 0, 0, 1]));
    Ok(fx)
}

fn ideal_row<K: Field>(i: &[Poly<K>]) -> GradedMatrix<K> {
    let degs: Vec<i32> = i.iter().map(|g| g.homogeneous_degree().unwrap() as i32).collect();
    GradedMatrix::from_rows(vec![0], degs, vec![i.to_vec()])
}

fn f3<K: Field>() -> Result<Fixture<K>> {
    let r = Ring::p3();
    let mut fx = Fixture::new("F3", r.clone(), "O_C", "double line and conic");
    let (q1, q2) = ("z^2", "z^2-y*w");
    let i = ideal::<K>(&r, &["x^2", "x*y", "x*z^2+y*(z^2-y*w)"]);
    let m = Presentation::quotient(r.clone(), &i)?;
    check_hp("F3", "O_C", &m, &[0, 4])?;
    let (a, b) = (format!("-({q1})"), format!("-({q2})"));
    let delta = matrix(&r, &[2, 2, 3], &[4, 3], &[&[a.as_str(), "-y"], &[b.as_str(), "x"], &["x", "0"]])?;
    check_complex("F3", &ideal_row(&i), &delta)?;
    fx.put("I", Object::Ideal(i));
    fx.put("O_C", Object::Module(m));
    fx.put("delta", Object::Matrix(delta));
    fx.put("I_L", Object::Ideal(ideal(&r, &["x", "y"])));
    fx.put("I_Q", Object::Ideal(ideal(&r, &["x", q2])));
    fx.put("p", Object::Point(vec![0, 0, 0, 1]));
    Ok(fx)
}

fn f4<K: Field>() -> Result<Fixture<K>> {
    let r = Ring::p3();
    let mut fx = Fixture::new("F4", r.clone(), "F", "sheaf on a double line with an embedded point");
    let phi = matrix::<K>(&r, &[1, 0], &[2; 5], &[&["x", "y", "z", "0", "0"], &["0", "0", "y^2", "x*y", "x^2"]])?;
    let psi = matrix::<K>(
        &r,
        &[2; 5],
        &[3; 3],
        &[&["-y", "-z", "0"], &["x", "0", "0"], &["0", "x", "0"], &["0", "-y", "x"], &["0", "0", "-y"]],
    )?;
    check_complex("F4", &phi, &psi)?;
    let f = Presentation::new(r.clone(), phi.clone())?;
    check_hp("F4", "F", &f, &[1, 4])?;
    let ann = ideal::<K>(&r, &["x^2", "x*y", "y^3"]);
    if !ideals_equal(&annihilator(&f), &ann) {
        return Err(Error::SelfCheck("F4: annihilator differs from <x^2,xy,y^3>".into()));
    }
    fx.put("phi", Object::Matrix(phi));
    fx.put("psi", Object::Matrix(psi));
    fx.put("F", Object::Module(f));
    fx.put("ann", Object::Ideal(ann));
    fx.put("p", Object::Point(vec![0, 0, 0, 1]));
    Ok(fx)
}

fn f5<K: Field>() -> Result<Fixture<K>> {
    let r = Ring::p3();
    let mut fx = Fixture::new("F5", r.clone(), "O_C0p_in", "planar cubic twisted by a point, two point positions");
    let q2 = "z^2-y*w";
    let nq2 = format!("-({q2})");
    let gamma = matrix::<K>(&r, &[1, 0], &[2, 2, 2, 1], &[&["y", "z", "x", "0"], &["0", q2, "0", "x"]])?;
    let delta = matrix::<K>(&r, &[2, 2, 2, 1], &[3, 3], &[&["x", "0"], &["0", "x"], &["-y", "-z"], &["0", nq2.as_str()]])?;
    check_complex("F5", &gamma, &delta)?;
    let gamma_out = matrix::<K>(&r, &[1, 0], &[2, 2, 2, 1], &[&["z", "w", "x", "0"], &["y^2", "y*z", "0", "x"]])?;
    let delta_out =
        matrix::<K>(&r, &[2, 2, 2, 1], &[3, 3], &[&["x", "0"], &["0", "x"], &["-z", "-w"], &["-y^2", "-y*z"]])?;
    check_complex("F5", &gamma_out, &delta_out)?;
    let m_in = Presentation::new(r.clone(), gamma.clone())?;
    let m_out = Presentation::new(r.clone(), gamma_out.clone())?;
    check_hp("F5", "O_C0p_in", &m_in, &[1, 3])?;
    check_hp("F5", "O_C0p_out", &m_out, &[1, 3])?;
    let cubic = format!("y*({q2})");
    let o_c0 = quotient::<K>(&r, &["x", cubic.as_str()])?;
    check_hp("F5", "O_C0", &o_c0, &[0, 3])?;
    let o_l = quotient::<K>(&r, &["x", "y"])?;
    fx.put("gamma", Object::Matrix(gamma));
    fx.put("delta", Object::Matrix(delta));
    fx.put("gamma_out", Object::Matrix(gamma_out));
    fx.put("delta_out", Object::Matrix(delta_out));
    fx.put("O_C0p_in", Object::Module(m_in));
    fx.put("O_C0p_out", Object::Module(m_out));
    fx.put("O_C0", Object::Module(o_c0));
    fx.put("O_Lm1", Object::Module(o_l.twist(-1)));
    fx.put("O_L", Object::Module(o_l));
    fx.put("C_p_in", Object::Module(point_module(&r, &[0, 0, 0, 1])?));
    fx.put("C_p_out", Object::Module(point_module(&r, &[0, 1, 0, 0])?));
    fx.put("p_in", Object::Point(vec![0, 0, 0, 1]));
    fx.put("p_out", Object::Point(vec![0, 1, 0, 0]));
    fx.put("I_L", Object::Ideal(ideal(&r, &["x", "y"])));
    Ok(fx)
}

fn f6<K: Field>() -> Result<Fixture<K>> {
    let r = Ring::p3();
    let mut fx = Fixture::new("F6", r.clone(), "Omega1", "cotangent bundle and its exterior square via Koszul syzygies");
    let o1 = omega_twisted::<K>(&r, 1)?;
    let o2 = omega_twisted::<K>(&r, 2)?;
    // degree-wise dimensions from 0 → Ω¹(1) → 4O → O(1) → 0 and 0 → Ω²(2) → 6O → Ω¹(2) → 0
    let c = |n: i64| crate::mon::count_monomials(4, n) as i64;
    for d in 1..6i64 {
        let w1 = 4 * c(d) - c(d + 1);
        let w1_next = 4 * c(d + 1) - c(d + 2);
        let w2 = 6 * c(d) - w1_next;
        if hilbert_function(&o1, d as i32) as i64 != w1 || hilbert_function(&o2, d as i32) as i64 != w2 {
            return Err(Error::SelfCheck(format!("F6: Omega dimensions wrong in degree {d}")));
        }
    }
    fx.put("Omega1", Object::Module(o1.twist(-1)));
    fx.put("Omega2", Object::Module(o2.twist(-2)));
    fx.put("Omega1_1", Object::Module(o1));
    fx.put("Omega2_2", Object::Module(o2));
    Ok(fx)
}

fn f7<K: Field>() -> Result<Fixture<K>> {
    let r = Ring::p3();
    let mut fx = Fixture::new("F7", r.clone(), "O_C0", "standard sheaves");
    fx.put("O", Object::Module(Presentation::free(r.clone(), vec![0])));
    fx.put("O_L", Object::Module(quotient(&r, &["x", "y"])?));
    fx.put("C_p", Object::Module(point_module(&r, &[0, 0, 0, 1])?));
    fx.put("O_H", Object::Module(quotient(&r, &["w"])?));
    let c0 = quotient::<K>(&r, &["x", "y^3+y*z*w+z^3"])?;
    check_hp("F7", "O_C0", &c0, &[0, 3])?;
    fx.put("O_C0", Object::Module(c0));
    fx.put("I_C0", Object::Ideal(ideal(&r, &["x", "y^3+y*z*w+z^3"])));
    fx.put("node", Object::Point(vec![0, 0, 0, 1]));
    Ok(fx)
}

fn planar_cubic_sheaf<K: Field>() -> Result<Fixture<K>> {
    let r = Ring::p2();
    let mut fx = Fixture::new("G", r.clone(), "G", "sheaf on a smooth plane cubic, Hilbert polynomial 3m+1");
    let phi = matrix::<K>(&r, &[1, 0], &[2, 2], &[&["x", "y"], &["-y^2", "z^2+x^2"]])?;
    let g = Presentation::new(r.clone(), phi.clone())?;
    check_hp("G", "G", &g, &[1, 3])?;
    fx.put("phi", Object::Matrix(phi));
    fx.put("G", Object::Module(g));
    fx.put("cubic", Object::Ideal(ideal(&r, &["x*z^2+x^3+y^3"])));
    Ok(fx)
}

fn res4<K: Field>() -> Result<Fixture<K>> {
    let r = Ring::p3();
    let mut fx = Fixture::new("res4", r.clone(), "F", "planar sheaf from a four-term resolution, l = w");
    let phi = matrix::<K>(&r, &[0, 0], &[3, 1, 1, 1], &[&["z^3", "x", "w", "0"], &["x^3+y^3", "y", "0", "w"]])?;
    let psi = matrix::<K>(
        &r,
        &[3, 1, 1, 1],
        &[4, 2],
        &[&["w", "0"], &["0", "w"], &["-z^3", "-x"], &["-x^3-y^3", "-y"]],
    )?;
    check_complex("res4", &phi, &psi)?;
    let f = Presentation::new(r.clone(), phi.clone())?;
    check_hp("res4", "F", &f, &[1, 4])?;
    let h = Ring::p2();
    let phibar = matrix::<K>(&h, &[0, 0], &[3, 1], &[&["z^3", "x"], &["x^3+y^3", "y"]])?;
    let fbar = Presentation::new(h, phibar.clone())?;
    check_hp("res4", "F_H", &fbar, &[1, 4])?;
    fx.put("phi", Object::Matrix(phi));
    fx.put("psi", Object::Matrix(psi));
    fx.put("F", Object::Module(f));
    fx.put("phibar", Object::Matrix(phibar));
    fx.put("F_H", Object::Module(fbar));
    Ok(fx)
}

/// The three quartic binary forms defining the plane rational quartic of `F8`,
/// coefficients of `s^4, s^3 t, ..., t^4`.
pub const F8_FORMS: [[i64; 5]; 3] = [[1, 0, 0, 0, 0], [0, 0, 0, 0, 1], [0, 1, 0, 1, 0]];

type Form<K> = Vec<K>;

fn form_mul<K: Field>(a: &Form<K>, b: &Form<K>) -> Form<K> {
    let mut out = vec![K::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = x.mul(y);
            out[i + j].add_assign(&t);
        }
    }
    out
}

fn form_pow_product<K: Field>(forms: &[Form<K>], m: &Mon) -> Form<K> {
    let mut acc: Form<K> = vec![K::one()];
    for (i, f) in forms.iter().enumerate() {
        for _ in 0..m.exp(i) {
            acc = form_mul(&acc, f);
        }
    }
    acc
}

/// The module `⊕_{d≥0} k[s,t]_{4d}` over `k[x,y,z]` (x, y, z acting through `forms`),
/// or over `k[x,y,z,w]` with `w` acting by zero. Returns the presentation and the
/// quartic equation of the image curve.
pub fn binary_form_module<K: Field>(forms: &[[i64; 5]; 3], p3: bool) -> Result<(Presentation<K>, Poly<K>)> {
    let fs: Vec<Form<K>> = forms.iter().map(|f| f.iter().map(|&c| K::from_i64(c)).collect()).collect();
    // generators: 1 in degree 0, then quartic monomials completing span(forms)
    let mut ech: Echelon<K> = Echelon::new();
    for f in &fs {
        ech.insert(sparse(f));
    }
    let mut gens: Vec<(i32, Form<K>)> = vec![(0, vec![K::one()])];
    for i in 0..5 {
        let mut e = vec![K::zero(); 5];
        e[i] = K::one();
        if ech.insert(sparse(&e)) {
            gens.push((1, e));
        }
    }
    let n = 3;
    let mut cols: Vec<Column<K>> = Vec::new();
    let mut src: Vec<i32> = Vec::new();
    for r in 1..=3i32 {
        // basis of G_r: (monomial, generator)
        let mut basis: Vec<(Mon, usize)> = Vec::new();
        for (j, (a, _)) in gens.iter().enumerate() {
            if r >= *a {
                for m in monomials_of_degree(n, (r - a) as u32) {
                    basis.push((m, j));
                }
            }
        }
        let dim = (4 * r + 1) as usize;
        let images: Vec<Form<K>> = basis.iter().map(|(m, j)| form_mul(&form_pow_product(&fs, m), &gens[*j].1)).collect();
        let a: Vec<Vec<K>> = (0..dim).map(|row| images.iter().map(|im| im[row].clone()).collect()).collect();
        for v in nullspace(&a, basis.len()) {
            let mut col: BTreeMap<u32, Poly<K>> = BTreeMap::new();
            for (k, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (m, j) = basis[k];
                let e = col.entry(j as u32).or_insert_with(Poly::zero);
                *e = e.add(&Poly::monomial(m, c.clone()));
            }
            cols.push(col.into_iter().filter(|(_, p)| !p.is_zero()).collect());
            src.push(r);
        }
    }
    let gdeg: Vec<i32> = gens.iter().map(|g| g.0).collect();
    let rels = GradedMatrix::from_columns(gdeg.clone(), src, cols);
    let plane = Ring::p2();
    let m2 = Presentation::new(plane.clone(), rels.clone())?.prune();
    for d in 0..7 {
        if hilbert_function(&m2, d) != (4 * d + 1) as usize {
            return Err(Error::SelfCheck(format!("binary form module: dim M_{d} != {}", 4 * d + 1)));
        }
    }
    // image equation: kernel of k[x,y,z]_4 → k[s,t]_16
    let mons = monomials_of_degree(n, 4);
    let images: Vec<Form<K>> = mons.iter().map(|m| form_pow_product(&fs, m)).collect();
    let a: Vec<Vec<K>> = (0..17).map(|row| images.iter().map(|im| im[row].clone()).collect()).collect();
    let ker = nullspace(&a, mons.len());
    if ker.len() != 1 {
        return Err(Error::SelfCheck(format!("binary form module: {} quartic relations", ker.len())));
    }
    let eq = Poly::from_terms(mons.iter().zip(&ker[0]).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (*m, c.clone())).collect());
    if !p3 {
        return Ok((m2, eq));
    }
    let space = Ring::p3();
    let mut cols: Vec<Column<K>> = m2.rels.cols().to_vec();
    let mut src = m2.rels.source.clone();
    for (c, &a) in m2.gens().iter().enumerate() {
        cols.push(vec![(c as u32, Poly::var(3))]);
        src.push(a + 1);
    }
    let rels3 = GradedMatrix::from_columns(m2.gens().to_vec(), src, cols);
    Ok((Presentation::new(space, rels3)?.prune(), eq))
}

fn sparse<K: Field>(v: &[K]) -> SparseVec<K> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

/// Length of the singular scheme `V(f, ∂f)` of a plane curve.
pub fn singular_length<K: Field>(f: &Poly<K>) -> Result<i64> {
    let r = Ring::p2();
    let mut g = vec![f.clone()];
    for i in 0..3 {
        let d = f.derivative(i);
        if !d.is_zero() {
            g.push(d);
        }
    }
    let m = Presentation::quotient(r, &g)?;
    let hp = hilbert_polynomial(&m);
    match hp.degree() {
        None => Ok(0),
        Some(0) => hp.chi().to_i64().ok_or_else(|| Error::SelfCheck("non-integral length".into())),
        Some(_) => Err(Error::SelfCheck(format!("singular locus is not finite: {hp}"))),
    }
}

fn f8<K: Field>(p3: bool) -> Result<Fixture<K>> {
    let (m, eq) = binary_form_module::<K>(&F8_FORMS, p3)?;
    let name = if p3 { "F8" } else { "F8plane" };
    let ring = m.ring.clone();
    let mut fx = Fixture::new(name, ring, "F", "pushforward of the structure sheaf of a line to a three-nodal plane quartic");
    check_hp(name, "F", &m, &[1, 4])?;
    fx.put("F", Object::Module(m));
    let eq = if p3 {
        Poly::from_terms(eq.terms().iter().map(|(mon, c)| (mon.embed(&[0, 1, 2]), c.clone())).collect())
    } else {
        eq
    };
    fx.put("curve", Object::Ideal(vec![eq]));
    Ok(fx)
}

/// Extension `0 → sub → E → quot → 0` from a nonzero class of `Ext^1_S(quot_{≥e}, sub)_0`.
///
/// With `F_2 → F_1 → F_0` resolving `T = quot_{≥e}`, a class is a degree-zero map
/// `φ: F_1 → sub` killing the image of `F_2`, taken modulo maps through `F_0`. The
/// extension is the pushout of `0 → im F_1 → F_0 → T → 0` along `φ`, presented by the
/// mapping cone `[[R_sub, φ~], [0, d_1]]`. When the classes span more than one
/// dimension the combination `Σ (i+1) v_i` is used.
pub fn extension_module<K: Field>(quot: &Presentation<K>, sub: &Presentation<K>, e: i32) -> Result<Presentation<K>> {
    let t = truncate(quot, e);
    let res = FreeResolution::minimal(&t, 2);
    let d1 = res.maps.first().cloned().unwrap_or_else(|| GradedMatrix::zero(res.modules[0].clone(), vec![]));
    let f1 = d1.source.clone();
    let d2 = res.maps.get(1).cloned().unwrap_or_else(|| GradedMatrix::zero(f1.clone(), vec![]));
    let pieces = Pieces::new(sub);
    let (img1, n1) = tensor_map_images(&dual_matrix(&d1), 0, &pieces);
    let (img2, n2) = tensor_map_images(&dual_matrix(&d2), 0, &pieces);
    debug_assert_eq!(img2.len(), n1);
    let mut a = vec![vec![K::zero(); n1]; n2];
    for (col, v) in img2.iter().enumerate() {
        for (row, c) in v {
            a[*row][col] = c.clone();
        }
    }
    let cocycles = nullspace(&a, n1);
    let mut ech: Echelon<K> = Echelon::new();
    for v in img1 {
        ech.insert(v);
    }
    let classes: Vec<Vec<K>> = cocycles.into_iter().filter(|v| ech.insert(sparse(v))).collect();
    if classes.is_empty() {
        return Err(Error::Invalid("no nonsplit extension in this truncation degree".into()));
    }
    let mut v = vec![K::zero(); n1];
    for (i, c) in classes.iter().enumerate() {
        let w = K::from_i64(i as i64 + 1);
        for (x, y) in v.iter_mut().zip(c) {
            x.add_assign(&y.mul(&w));
        }
    }
    // coordinates → one column of sub's free module per generator of F_1
    let ns = sub.ngens();
    let mut cols: Vec<Column<K>> = sub.rels.cols().to_vec();
    let mut src = sub.rels.source.clone();
    let mut off = 0;
    for (k, &a_k) in f1.iter().enumerate() {
        let basis = pieces.basis(a_k);
        let mut entries: BTreeMap<u32, Poly<K>> = BTreeMap::new();
        for (idx, (m, c)) in basis.iter().enumerate() {
            let coef = &v[off + idx];
            if !coef.is_zero() {
                let e = entries.entry(*c).or_insert_with(Poly::zero);
                *e = e.add(&Poly::monomial(*m, coef.clone()));
            }
        }
        off += basis.len();
        let mut col: Column<K> = entries.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        for (i, p) in d1.col(k) {
            col.push((*i + ns as u32, p.clone()));
        }
        cols.push(col);
        src.push(a_k);
    }
    let mut target = sub.gens().to_vec();
    target.extend_from_slice(&res.modules[0]);
    let rels = GradedMatrix::from_columns(target, src, cols);
    Ok(Presentation::new(sub.ring.clone(), rels)?.prune())
}

/// Non-planar extension of `O_L` by the structure sheaf of the nodal plane cubic of `F7`,
/// with `L = <y+z, w>` meeting the cubic at the smooth point `[0:1:-1:0]`.
fn wplus<K: Field>() -> Result<Fixture<K>> {
    let r = Ring::p3();
    let mut fx = Fixture::new("Wplus", r.clone(), "F", "extension of a line by a plane cubic, line not in the plane");
    let c0 = quotient::<K>(&r, &["x", "y^3+y*z*w+z^3"])?;
    let l = quotient::<K>(&r, &["y+z", "w"])?;
    let ext = sheaf_ext(&l, &c0, 1)?;
    if ext.dim == 0 {
        return Err(Error::SelfCheck("Wplus: Ext^1(O_L, O_C0) vanishes".into()));
    }
    let f = extension_module(&l, &c0, ext.e)?;
    check_hp("Wplus", "F", &f, &[1, 4])?;
    fx.put("O_C0", Object::Module(c0));
    fx.put("O_L", Object::Module(l));
    fx.put("F", Object::Module(f));
    fx.put("p", Object::Point(vec![0, 1, -1, 0]));
    Ok(fx)
}

/// Outcome of the point-dependent Ext jump check.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub struct JumpExt {
    pub rank_at_p: usize,
    pub predicted_ext: usize,
    pub computed_ext: usize,
}

/// Rank of the syzygy matrix `delta` at `p` predicts `dim Ext^1(C_p, O_C) = 2 - rank`;
/// the direct sheaf Ext computation is returned alongside.
pub fn jumpext_case<K: Field>(fx: &Fixture<K>) -> Result<JumpExt> {
    let delta = fx.matrix("delta")?;
    let coords = fx.point("p")?;
    let pt: Vec<K> = point_coords(coords);
    let i = fx.ideal("I")?;
    if i.iter().any(|g| !g.eval(&pt).is_zero()) {
        return Err(Error::Invalid(format!("{}: the point is not on the curve", fx.name)));
    }
    let rank_at_p = rank_dense(&delta.eval(&pt));
    let predicted_ext = delta.ncols() - rank_at_p;
    let cp = point_module(&fx.ring, coords)?;
    let computed_ext = sheaf_ext_dim(&cp, fx.main_module(), 1)?;
    Ok(JumpExt { rank_at_p, predicted_ext, computed_ext })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    #[test]
    fn hand_entered_fixtures_load() {
        for name in ["F1", "F1p", "F2a", "F2b", "F3", "F4", "F5", "F6", "F7", "F8", "F8plane", "G", "res4"] {
            load_fixture::<Q>(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn aliases_resolve() {
        assert_eq!(canonical_name("e2b_sheaf"), Some("F4"));
        assert_eq!(canonical_name("F4"), Some("F4"));
        assert!(load_fixture::<Q>("nope").is_err());
    }

    #[test]
    fn pointed_ci_is_smooth() {
        let fx = load_fixture::<Q>("F1p").unwrap();
        let i = fx.ideal("I").unwrap().to_vec();
        let mut g = i.clone();
        for a in 0..4 {
            for b in a + 1..4 {
                let m = i[0].derivative(a).mul(&i[1].derivative(b)).sub(&i[0].derivative(b).mul(&i[1].derivative(a)));
                if !m.is_zero() {
                    g.push(m);
                }
            }
        }
        let sing = Presentation::quotient(Ring::p3(), &g).unwrap();
        assert_eq!(hilbert_polynomial(&sing).degree(), None);
    }

    #[test]
    fn binary_form_module_has_three_nodes() {
        let (m, eq) = binary_form_module::<Q>(&F8_FORMS, false).unwrap();
        assert_eq!(m.gens(), &[0, 1, 1]);
        assert_eq!(eq.homogeneous_degree(), Some(4));
        assert_eq!(singular_length(&eq).unwrap(), 3);
    }

    #[test]
    fn wplus_loads() {
        let fx = load_fixture::<Q>("Wplus").unwrap();
        assert_eq!(hilbert_polynomial(fx.main_module()).to_string(), "4*m+1");
    }
}
