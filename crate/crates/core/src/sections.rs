//! Hyperplane-section graphs with several (-1)-curves attached to the
//! resolution graph of a single germ. They are the worked configurations
//! whose anticanonical degrees are known in closed form.

use crate::graph::{numbered_ids, Graph, GraphError};

/// IC configuration with three central curves, for odd `m >= 7`.
///
/// Bottom row `e1 – e2 – e3(-3) – x… – e4(-3) – e5` with `(m-7)/2` vertices
/// `x…`; `u` of self-intersection `-(m+3)/2` hangs from `e3`, `v` from `e4`.
/// Black (-1)-curves: `C1` on `e2`, `C2` on `u`, `C3` on `v`.
/// Expected degrees: `1/m`, `1/m`, `(m-1)/2m`.
pub fn ic_three_curves(m: u32) -> Result<Graph, GraphError> {
    assert!(m >= 7 && m % 2 == 1, "needs odd m >= 7, got {m}");
    let middle = numbered_ids("x", ((m - 7) / 2) as usize);
    let mut b = Graph::builder();
    b.white("e1", -2)?.white("e2", -2)?.white("e3", -3)?;
    for id in &middle {
        b.white(id.clone(), -2)?;
    }
    b.white("e4", -3)?.white("e5", -2)?;
    b.white("u", -(((m + 3) / 2) as i64))?.white("v", -2)?;
    b.black("C1", -1)?.black("C2", -1)?.black("C3", -1)?;
    let mut row: Vec<String> = ["e1", "e2", "e3"].map(String::from).to_vec();
    row.extend(middle);
    row.extend(["e4", "e5"].map(String::from));
    b.path(&row)?;
    b.edge("e3", "u")?.edge("e4", "v")?;
    b.edge("C1", "e2")?.edge("C2", "u")?.edge("C3", "v")?;
    Ok(b.build())
}

/// IIB configuration with a second central curve.
///
/// Whites `a(-3) – b(-4) – c – d – e`, `f(-3)` on `b`, `g` on `c`;
/// `C2` on `f`, `C1` on `g`. Expected degrees: `1/4`, `1/4`.
pub fn iib_two_curves() -> Graph {
    let mut b = Graph::builder();
    let build = |b: &mut crate::graph::GraphBuilder| -> Result<(), GraphError> {
        b.white("a", -3)?.white("b", -4)?.white("c", -2)?.white("d", -2)?.white("e", -2)?;
        b.white("f", -3)?.white("g", -2)?;
        b.black("C1", -1)?.black("C2", -1)?;
        b.edge("a", "b")?.edge("b", "c")?.edge("c", "d")?.edge("d", "e")?;
        b.edge("b", "f")?.edge("c", "g")?;
        b.edge("C2", "f")?.edge("g", "C1")?;
        Ok(())
    };
    build(&mut b).expect("static graph");
    b.build()
}

/// Three central curves over a `cD/3` point.
///
/// `x – C1 – y(-3) – z – w(-3) – C2`, `t(-3)` on `z`, `C3` on `t`.
pub fn cd3_three_curves() -> Graph {
    let mut b = Graph::builder();
    let build = |b: &mut crate::graph::GraphBuilder| -> Result<(), GraphError> {
        b.white("x", -2)?.white("y", -3)?.white("z", -2)?.white("w", -3)?.white("t", -3)?;
        b.black("C1", -1)?.black("C2", -1)?.black("C3", -1)?;
        b.edge("x", "C1")?.edge("C1", "y")?.edge("y", "z")?.edge("z", "w")?.edge("w", "C2")?;
        b.edge("z", "t")?.edge("t", "C3")?;
        Ok(())
    };
    build(&mut b).expect("static graph");
    b.build()
}
