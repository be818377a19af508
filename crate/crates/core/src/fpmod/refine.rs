use super::filtration::FiltrationChain;
use super::presmod::{PresMod, Submodule};
use crate::error::{Error, Result};
use crate::groebner::HilbertSeries;

/// Common refinements of two filtrations of the same graded module, built
/// from the chains `D_{i+1} + D_i ∩ F_j` and `F_{j+1} + F_j ∩ D_i`. The
/// nonzero graded quotients of the two results are matched by Hilbert
/// series; this is a necessary condition for them to be isomorphic up to
/// order, not a proof.
pub fn refine_filtrations(d: &FiltrationChain, f: &FiltrationChain) -> Result<(FiltrationChain, FiltrationChain)> {
    let m = d.ambient();
    if !m.is_graded() {
        return Err(Error::Grading("refinement needs a graded module".into()));
    }
    if f.ambient().ring() != m.ring() || f.ambient().relation_vectors() != m.relation_vectors() {
        return Err(Error::InvalidInput("filtrations of different modules".into()));
    }
    let dm = d.members();
    let fm = f.members();
    let dr = butterfly(dm, fm);
    let fr = butterfly(fm, dm);

    // the (i, j) step of one chain matches the (j, i) step of the other
    for i in 0..dm.len() - 1 {
        for j in 0..fm.len() - 1 {
            let a = dr[i * (fm.len() - 1) + j].clone();
            let b = fr[j * (dm.len() - 1) + i].clone();
            if !same_series(&a.0.quotient_over(&a.1)?, &b.0.quotient_over(&b.1)?)? {
                return Err(Error::cross("refine_filtrations", format!("steps ({i}, {j}) differ")));
            }
        }
    }
    let d2 = FiltrationChain::new(m, chain(&dr))?.compressed();
    let f2 = FiltrationChain::new(m, chain(&fr))?.compressed();
    if !d2.refines(d) || !f2.refines(f) {
        return Err(Error::cross("refine_filtrations", "result does not refine its input"));
    }
    if !similar(&d2, &f2)? {
        return Err(Error::cross("refine_filtrations", "quotient multisets differ"));
    }
    Ok((d2, f2))
}

/// Consecutive pairs `(X_{i,j}, X_{i,j+1})` with `X_{i,j} = A_{i+1} + A_i ∩ B_j`.
fn butterfly(a: &[Submodule], b: &[Submodule]) -> Vec<(Submodule, Submodule)> {
    let mut out = Vec::new();
    for i in 0..a.len() - 1 {
        let row: Vec<Submodule> = b.iter().map(|bj| a[i + 1].sum(&a[i].intersect(bj))).collect();
        for j in 0..b.len() - 1 {
            out.push((row[j].clone(), row[j + 1].clone()));
        }
    }
    out
}

fn chain(steps: &[(Submodule, Submodule)]) -> Vec<Submodule> {
    let mut out: Vec<Submodule> = steps.iter().map(|s| s.0.clone()).collect();
    out.push(steps.last().unwrap().1.clone());
    out
}

fn same_series(a: &PresMod, b: &PresMod) -> Result<bool> {
    Ok(a.hilbert_series()?.sub(&b.hilbert_series()?)?.is_zero())
}

/// Multisets of nonzero quotient Hilbert series coincide.
pub(crate) fn similar(a: &FiltrationChain, b: &FiltrationChain) -> Result<bool> {
    let series = |c: &FiltrationChain| -> Result<Vec<HilbertSeries>> {
        let mut v = Vec::new();
        for q in c.quotients()? {
            let h = q.hilbert_series()?;
            if !h.is_zero() {
                v.push(h);
            }
        }
        Ok(v)
    };
    let sa = series(a)?;
    let mut sb = series(b)?;
    if sa.len() != sb.len() {
        return Ok(false);
    }
    for h in sa {
        let mut found = None;
        for (k, g) in sb.iter().enumerate() {
            if h.sub(g)?.is_zero() {
                found = Some(k);
                break;
            }
        }
        match found {
            Some(k) => {
                sb.swap_remove(k);
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}
