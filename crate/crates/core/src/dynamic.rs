//! Dynamic evaluation: run a construction, and when an inversion exposes a
//! reducible level, repair the tower and run it again.
//!
//! A reducible level of the input tower is replaced by a proper factor of
//! its minimal polynomial and inputs are mapped through [`Session::lift`].
//! A square-root level created during the run can only be reducible if the
//! square test missed a root; the root exposed by the witness is remembered
//! and used directly on the next run, so the level is never created again.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::sqrt::{sqrt_or_nonsquare, SqrtResult};
use crate::tower::{Elem, Refinement, Tower};

const MAX_REFINEMENTS: usize = 32;

pub struct Session {
    tower: Tower,
    base_height: usize,
    refinements: Vec<Refinement>,
    hints: HashMap<(usize, String), Elem>,
}

impl Session {
    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// Height of the (possibly refined) input tower.
    pub fn base_height(&self) -> usize {
        self.base_height
    }

    /// Map an element of the original input tower into the current one.
    pub fn lift(&self, x: &Elem) -> Elem {
        self.refinements.iter().fold(x.clone(), |x, r| r.apply(&x))
    }

    /// A square root of `c`, adjoining a level `X² − c` only when `c` is not
    /// already a square.
    pub fn sqrt(&mut self, c: &Elem) -> Result<Elem> {
        if c.is_zero() {
            return Ok(Elem::zero());
        }
        let key = (self.tower.height(), c.to_string());
        if let Some(s) = self.hints.get(&key) {
            return Ok(s.clone());
        }
        match sqrt_or_nonsquare(&self.tower, c)? {
            SqrtResult::Sqrt(s) => Ok(s),
            SqrtResult::NonSquare => {
                let label = format!("s{}", self.tower.height() + 1);
                self.tower = self.tower.adjoin_sqrt(label, c)?;
                Ok(self.tower.gen(self.tower.height()))
            }
        }
    }

    /// Number of levels added on top of the input tower so far.
    pub fn added_levels(&self) -> usize {
        self.tower.height() - self.base_height
    }
}

/// Run `f` until it finishes without hitting a reducible level.
pub fn run<T>(base: &Tower, mut f: impl FnMut(&mut Session) -> Result<T>) -> Result<(T, Session)> {
    let mut refinements: Vec<Refinement> = Vec::new();
    let mut hints = HashMap::new();
    let mut current = base.clone();
    for _ in 0..MAX_REFINEMENTS {
        let mut s = Session {
            tower: current.clone(),
            base_height: current.height(),
            refinements: refinements.clone(),
            hints: hints.clone(),
        };
        match f(&mut s) {
            Ok(out) => return Ok((out, s)),
            Err(Error::Reducible(w)) if w.level <= current.height() => {
                let r = current.refine(&w)?;
                current = r.tower.clone();
                refinements.push(r);
                hints.clear();
            }
            Err(Error::Reducible(w)) => {
                let level = s.tower.level(w.level);
                let Some(c) = level.radicand() else {
                    return Err(Error::Reducible(w));
                };
                // A linear factor X + f₀ of X² − c gives the root −f₀.
                let root = -&w.factor[0];
                hints.insert((w.level - 1, c.to_string()), root);
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::RefinementLimit(MAX_REFINEMENTS))
}
