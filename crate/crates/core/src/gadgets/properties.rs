//! Order properties of the standalone gadgets on the unsatisfiable side,
//! checked by bounded exhaustive search over collapse prefixes.

use std::collections::BTreeSet;

use super::*;
use crate::search::{search_prefixes, PrefixReport, PrefixSearchConfig, PrefixView};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PrefixProperty {
    /// K(c): every collapse starts with one of the edges (ℓi,c).
    ClauseStart,
    /// B(ℓ): every collapse starts with e(ℓ).
    BlStart,
    /// K_and: no triangle on an f-edge goes before e_and.
    AndFirst,
    /// K(ℓ,ℓ̄): T(ℓ) and T(ℓ̄) do not both go while f(ℓ) and f(ℓ̄) remain.
    LiteralLock,
}

impl PrefixProperty {
    pub const ALL: [PrefixProperty; 4] =
        [PrefixProperty::ClauseStart, PrefixProperty::BlStart, PrefixProperty::AndFirst, PrefixProperty::LiteralLock];

    pub fn name(self) -> &'static str {
        match self {
            PrefixProperty::ClauseStart => "clause",
            PrefixProperty::BlStart => "bl",
            PrefixProperty::AndFirst => "and",
            PrefixProperty::LiteralLock => "literal",
        }
    }

    /// The standalone gadget the property is checked on, and the name of the
    /// certificate whose residue sets the default depth.
    pub fn gadget(self) -> Result<(GadgetInstance, &'static str)> {
        Ok(match self {
            PrefixProperty::ClauseStart => {
                (clause_gadget(0, [Literal::pos(1), Literal::pos(2), Literal::pos(3)])?, "clause:(x1,c1)")
            }
            PrefixProperty::BlStart => (bl_gadget(Literal::pos(1), &[0, 1])?, "bl:x1"),
            PrefixProperty::AndFirst => (conjunction_gadget(2)?, "and"),
            PrefixProperty::LiteralLock => (literal_gadget(1)?, "literal1:x1"),
        })
    }

    /// Depth = faces removed by the gadget's own certificate.
    pub fn default_config(self, node_budget: u64) -> Result<PrefixSearchConfig> {
        let (g, cert) = self.gadget()?;
        let c = g.certificate(cert).expect("gadget ships its certificate");
        Ok(PrefixSearchConfig { max_depth: c.start.len() - c.certificate.target.len(), node_budget })
    }
}

pub type Violation = Box<dyn Fn(&PrefixView) -> bool>;

/// The violation predicate of `p` on gadget `g`.
pub fn violation(p: PrefixProperty, g: &GadgetInstance) -> Result<Violation> {
    Ok(match p {
        PrefixProperty::ClauseStart | PrefixProperty::BlStart => {
            let starts: BTreeSet<Face> = g
                .labeled
                .face_labels
                .iter()
                .filter(|(n, _)| if p == PrefixProperty::BlStart { n.starts_with("e(") } else { n.starts_with('(') })
                .map(|(_, f)| f.clone())
                .collect();
            Box::new(move |v: &PrefixView| v.steps().first().is_some_and(|s| !starts.contains(&s.sigma)))
        }
        PrefixProperty::AndFirst => {
            let e_and = g.face("e_and")?.clone();
            let fs: Vec<Face> =
                g.labeled.face_labels.iter().filter(|(n, _)| n.starts_with("f(")).map(|(_, f)| f.clone()).collect();
            let tris: Vec<Face> =
                g.complex().dim_faces(2).into_iter().filter(|t| fs.iter().any(|f| f.is_subface_of(t))).collect();
            Box::new(move |v: &PrefixView| v.contains(&e_and) && tris.iter().any(|t| !v.contains(t)))
        }
        PrefixProperty::LiteralLock => {
            let mut sides = Vec::new();
            for n in ["x1", "~x1"] {
                let region = g.region(&format!("X({n})"))?.clone();
                sides.push((g.face(&format!("e({n})"))?.clone(), g.face(&format!("f({n})"))?.clone(), region));
            }
            Box::new(move |v: &PrefixView| {
                let gone = |e: &Face, r: &SimplicialComplex| !v.cofaces(e).iter().any(|t| r.contains(t));
                sides.iter().all(|(e, f, r)| gone(e, r) && v.contains(f))
            })
        }
    })
}

pub fn check_prefix_property(p: PrefixProperty, cfg: PrefixSearchConfig) -> Result<PrefixReport> {
    let (g, _) = p.gadget()?;
    let bad = violation(p, &g)?;
    Ok(search_prefixes(g.complex(), cfg, bad))
}
