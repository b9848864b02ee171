//! Globally adaptive bisection shared by the Gauss–Kronrod and Filon rules.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{QuadConfig, QuadResult};
use crate::error::{Error, Result};
use crate::math::{abs, C64, ZERO};

/// Output of one panel rule application.
pub(crate) struct PanelEstimate {
    pub value: C64,
    pub err: f64,
    /// Error level below which refinement cannot help (roundoff).
    pub floor: f64,
    pub evals: u64,
}

struct Panel {
    a: f64,
    b: f64,
    value: C64,
    err: f64,
    refinable: bool,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.key() == o.key()
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.key().total_cmp(&o.key())
    }
}
impl Panel {
    fn key(&self) -> f64 {
        if self.refinable {
            self.err
        } else {
            -1.0
        }
    }
}

fn too_narrow(a: f64, b: f64) -> bool {
    let mid = 0.5 * (a + b);
    !(mid > a && mid < b) || (b - a) <= 1e-13 * a.abs().max(b.abs())
}

/// Refines the panels in `init` by bisecting the worst one until the summed
/// error estimate drops below `cfg.tol` or nothing is left to refine.
pub(crate) fn adapt<R>(init: &[(f64, f64)], cfg: &QuadConfig, mut rule: R) -> Result<QuadResult>
where
    R: FnMut(f64, f64) -> PanelEstimate,
{
    let mut heap = BinaryHeap::with_capacity(init.len() * 2);
    let mut evals = 0u64;
    let mut total = ZERO;
    let mut err = 0.0;
    let mut panels = 0u64;
    let push = |heap: &mut BinaryHeap<Panel>, a: f64, b: f64, e: PanelEstimate, total: &mut C64, err: &mut f64| {
        let refinable = e.err > e.floor && !too_narrow(a, b);
        *total += e.value;
        *err += e.err;
        heap.push(Panel { a, b, value: e.value, err: e.err, refinable });
    };
    for &(a, b) in init {
        if b <= a {
            continue;
        }
        if evals >= cfg.budget {
            // The initial cover alone does not fit; the estimate is incomplete.
            return Err(Error::BudgetExceeded {
                best: QuadResult { value: total, err_est: f64::INFINITY, panels, evals },
                evaluations: evals,
            });
        }
        let e = rule(a, b);
        evals += e.evals;
        panels += 1;
        push(&mut heap, a, b, e, &mut total, &mut err);
    }
    if heap.is_empty() {
        return Ok(QuadResult { value: ZERO, err_est: 0.0, panels: 1, evals: 1 });
    }
    let mut iterations = 0u32;
    loop {
        if err <= cfg.tol {
            break;
        }
        let worst = match heap.peek() {
            Some(p) if p.refinable => heap.pop().unwrap(),
            _ => break,
        };
        if evals >= cfg.budget {
            heap.push(worst);
            let (v, e) = resum(&heap);
            return Err(Error::BudgetExceeded {
                best: QuadResult { value: v, err_est: e, panels, evals },
                evaluations: evals,
            });
        }
        total -= worst.value;
        err -= worst.err;
        let mid = 0.5 * (worst.a + worst.b);
        let left = rule(worst.a, mid);
        let right = rule(mid, worst.b);
        evals += left.evals + right.evals;
        panels += 1;
        push(&mut heap, worst.a, mid, left, &mut total, &mut err);
        push(&mut heap, mid, worst.b, right, &mut total, &mut err);
        iterations += 1;
        // Periodic resummation removes drift from the running totals.
        if iterations % 256 == 0 {
            let (v, e) = resum(&heap);
            total = v;
            err = e;
        }
    }
    let (value, err_est) = resum(&heap);
    Ok(QuadResult { value, err_est: abs(err_est), panels, evals })
}

fn resum(heap: &BinaryHeap<Panel>) -> (C64, f64) {
    let mut items: Vec<&Panel> = heap.iter().collect();
    items.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut v = ZERO;
    let mut e = 0.0;
    for p in items {
        v += p.value;
        e += p.err;
    }
    (v, e)
}
