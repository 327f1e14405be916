//! Workloads shared by the criterion benches.

use quartic_core::fixtures::load_fixture;
use quartic_core::session::Env;
use quartic_core::{Presentation, Q};

/// Modules used across benches, loaded once.
pub struct Workloads {
    pub ci: Presentation<Q>,
    pub line_cubic: Presentation<Q>,
    pub e2b: Presentation<Q>,
    pub wplus: Presentation<Q>,
    pub planar_quartic: Presentation<Q>,
    pub cubic_point: Presentation<Q>,
    pub line_m1: Presentation<Q>,
}

impl Workloads {
    pub fn load() -> Self {
        let env: Env<Q> = Env::new(None);
        let m = |r: &str| env.module(r).unwrap_or_else(|e| panic!("{r}: {e}"));
        Workloads {
            ci: m("F1"),
            line_cubic: m("F2a.I"),
            e2b: m("F4"),
            wplus: m("Wplus"),
            planar_quartic: m("F8plane"),
            cubic_point: m("F5.O_C0p_in"),
            line_m1: m("F5.O_Lm1"),
        }
    }
}

/// Loads a fixture by name, for benchmarking construction itself.
pub fn load(name: &str) {
    load_fixture::<Q>(name).unwrap_or_else(|e| panic!("{name}: {e}"));
}
