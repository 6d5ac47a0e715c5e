use std::sync::{Arc, OnceLock};

use crate::arith::VariableSpace;

/// Weierstrass parameters in their fixed order, with their `(i, j)` labels.
pub const U_LABELS: [(u16, u16); 6] = [(5, 3), (4, 4), (3, 5), (7, 5), (6, 6), (5, 7)];

pub const U_NAMES: [&str; 6] = ["u_5_3", "u_4_4", "u_3_5", "u_7_5", "u_6_6", "u_5_7"];

pub const X: &str = "x";
pub const W: &str = "w";

/// `u` parameters (weight `(i+j)/2`) followed by the base coordinates `x, w`
/// (weight 0).
pub fn u_space() -> &'static Arc<VariableSpace> {
    static SPACE: OnceLock<Arc<VariableSpace>> = OnceLock::new();
    SPACE.get_or_init(|| {
        let mut vars: Vec<(String, u32)> = U_NAMES
            .iter()
            .zip(U_LABELS)
            .map(|(n, (i, j))| (n.to_string(), u32::from(i + j) / 2))
            .collect();
        vars.push((X.into(), 0));
        vars.push((W.into(), 0));
        VariableSpace::new(vars).unwrap()
    })
}

/// Invariants `t_4, t_6, t_8, t_10, t_12` together with `s_10`.
pub fn ts_space() -> &'static Arc<VariableSpace> {
    static SPACE: OnceLock<Arc<VariableSpace>> = OnceLock::new();
    SPACE.get_or_init(|| {
        VariableSpace::new([
            ("t_4", 4),
            ("t_6", 6),
            ("t_8", 8),
            ("t_10", 10),
            ("t_12", 12),
            ("s_10", 10),
        ])
        .unwrap()
    })
}

/// The polynomial ring of the free invariants `t_4, ..., t_12`.
pub fn t_space() -> &'static Arc<VariableSpace> {
    static SPACE: OnceLock<Arc<VariableSpace>> = OnceLock::new();
    SPACE.get_or_init(|| {
        VariableSpace::new([("t_4", 4), ("t_6", 6), ("t_8", 8), ("t_10", 10), ("t_12", 12)])
            .unwrap()
    })
}

/// `u_space` extended by formal torus parameters `lambda`, `mu`, `mu_inv`.
pub fn action_space() -> &'static Arc<VariableSpace> {
    static SPACE: OnceLock<Arc<VariableSpace>> = OnceLock::new();
    SPACE.get_or_init(|| {
        let base = u_space();
        let mut vars: Vec<(String, u32)> = base
            .names()
            .iter()
            .cloned()
            .zip(base.weights().iter().copied())
            .collect();
        vars.push(("lambda".into(), 0));
        vars.push(("mu".into(), 0));
        vars.push(("mu_inv".into(), 0));
        VariableSpace::new(vars).unwrap()
    })
}

pub(crate) const T10: usize = 3;
pub(crate) const S10: usize = 5;

pub(crate) const U53: usize = 0;
pub(crate) const U44: usize = 1;
pub(crate) const U35: usize = 2;
pub(crate) const U75: usize = 3;
pub(crate) const U66: usize = 4;
pub(crate) const U57: usize = 5;
pub(crate) const XI: usize = 6;
pub(crate) const WI: usize = 7;
