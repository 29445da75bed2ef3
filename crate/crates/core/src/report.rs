//! The combined report behind the `check` command.

use std::fmt::Write as _;

use serde_json::{json, Value};
use thiserror::Error;

use crate::barannikov::{self, BarannikovError, CanonicalForm, FieldSpec, FmcMove, Reduction};
use crate::germfile::{int_json, matrix_json};
use crate::morse::{
    self, GaugeElement, GermComplex, GermError, PropertyObstruction, PropertyPVerdict,
    PropertyStatus,
};
use crate::omega::OmegaObstruction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Field(#[from] BarannikovError),
}

/// Deliberately never claims that the germ extends: a positive answer only
/// says the necessary condition holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    ObstructedOverZ,
    NecessaryConditionHolds,
    Unknown,
}

impl Conclusion {
    pub fn exit_code(self) -> i32 {
        match self {
            Conclusion::NecessaryConditionHolds => 0,
            Conclusion::ObstructedOverZ => 1,
            Conclusion::Unknown => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Conclusion::ObstructedOverZ => "obstructed_over_z",
            Conclusion::NecessaryConditionHolds => "necessary_condition_holds",
            Conclusion::Unknown => "unknown",
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Conclusion::ObstructedOverZ => {
                "obstructed over Z: the germ has no extension without critical points"
            }
            Conclusion::NecessaryConditionHolds => {
                "necessary condition holds (this alone does not show that an extension exists)"
            }
            Conclusion::Unknown => "unknown: bounded search found neither witness nor obstruction",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldVerdict {
    pub field: FieldSpec,
    pub canonical: CanonicalForm,
    pub reduction: Reduction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub n: usize,
    pub plus_counts: Vec<usize>,
    pub minus_counts: Vec<usize>,
    pub verdict: PropertyPVerdict,
    pub fields: Vec<FieldVerdict>,
    pub conclusion: Conclusion,
}

pub fn check_germ(
    germ: &GermComplex,
    fields: &[FieldSpec],
    bound: u64,
) -> Result<CheckReport, CheckError> {
    let verdict = morse::check_property_p(germ, bound)?;
    let conclusion = match verdict.status() {
        PropertyStatus::Satisfied => Conclusion::NecessaryConditionHolds,
        PropertyStatus::Violated => Conclusion::ObstructedOverZ,
        PropertyStatus::Unknown => Conclusion::Unknown,
    };
    let mut field_verdicts = Vec::new();
    for &field in fields {
        let canonical = barannikov::canonical_form(germ, field)?;
        let state = barannikov::fmc_from_germ(germ, field)?;
        let reduction = barannikov::reduce_to_trivial(&state)?;
        field_verdicts.push(FieldVerdict {
            field,
            canonical,
            reduction,
        });
    }
    let n = germ.n();
    Ok(CheckReport {
        n,
        plus_counts: (0..=n).map(|k| germ.plus_count(k)).collect(),
        minus_counts: (0..=n).map(|k| germ.minus_count(k)).collect(),
        verdict,
        fields: field_verdicts,
        conclusion,
    })
}

pub fn omega_obstruction_json(o: &OmegaObstruction) -> Value {
    match o {
        OmegaObstruction::NotSurjective { divisor } => json!({
            "kind": "not_surjective",
            "divisor": int_json(divisor),
        }),
        OmegaObstruction::DeterminantResidue {
            determinant,
            modulus,
            residue,
        } => json!({
            "kind": "determinant_residue",
            "determinant": int_json(determinant),
            "modulus": int_json(modulus),
            "residue": int_json(residue),
        }),
    }
}

pub fn obstruction_json(o: &PropertyObstruction) -> Value {
    let mut v = match o {
        PropertyObstruction::RankMismatch {
            label,
            upper_degree,
            upper,
            lower,
        } => json!({
            "kind": "rank_mismatch",
            "label": label.symbol(),
            "upper_degree": upper_degree,
            "upper": upper,
            "lower": lower,
        }),
        PropertyObstruction::Omega {
            degree,
            obstruction,
        } => {
            let mut v = omega_obstruction_json(obstruction);
            v["degree"] = json!(degree);
            v
        }
        PropertyObstruction::EulerCharacteristic {
            label,
            expected,
            found,
        } => json!({
            "kind": "euler_characteristic",
            "label": label.symbol(),
            "expected": expected,
            "found": found,
        }),
        PropertyObstruction::EmptyDegree { label, degree } => json!({
            "kind": "empty_degree",
            "label": label.symbol(),
            "degree": degree,
        }),
        PropertyObstruction::OnlyIdentity(why) => json!({
            "kind": "only_identity",
            "reason": why.to_string(),
        }),
    };
    v["message"] = json!(o.to_string());
    v
}

/// Nonempty gauge blocks keyed by degree.
pub fn gauge_json(g: &GaugeElement) -> Value {
    let blocks: Vec<Value> = g
        .blocks()
        .iter()
        .enumerate()
        .filter(|(_, b)| b.rows() > 0 && b.cols() > 0)
        .map(|(k, b)| json!({"degree": k, "block": matrix_json(b)}))
        .collect();
    Value::Array(blocks)
}

pub fn verdict_json(v: &PropertyPVerdict) -> Value {
    json!({
        "status": v.status().to_string(),
        "route": v.route().to_string(),
        "witness": v.witness().map(gauge_json),
        "obstruction": v.obstruction().map(obstruction_json),
        "search_bound": v.search_bound(),
    })
}

pub fn canonical_json(cf: &CanonicalForm) -> Value {
    json!({
        "pairs": cf.pairs.iter().map(|p| json!({
            "source": p.source,
            "target": p.target,
            "index": p.index,
        })).collect::<Vec<_>>(),
        "unpaired": cf.unpaired,
    })
}

pub fn move_json(m: &FmcMove) -> Value {
    match m {
        FmcMove::Crossing {
            upper,
            lower,
            mover,
            rewired,
        } => json!({
            "move": "crossing",
            "upper": upper,
            "lower": lower,
            "mover": mover,
            "rewired": rewired,
        }),
        FmcMove::Death { source, target } => json!({
            "move": "death",
            "source": source,
            "target": target,
        }),
    }
}

impl CheckReport {
    pub fn exit_code(&self) -> i32 {
        self.conclusion.exit_code()
    }

    pub fn to_json(&self, with_trace: bool) -> Value {
        let fields: Vec<Value> = self
            .fields
            .iter()
            .map(|f| {
                let mut v = json!({
                    "characteristic": f.field.characteristic(),
                    "canonical_form": canonical_json(&f.canonical),
                    "reducible": f.reduction.reducible,
                    "states_explored": f.reduction.states_explored,
                });
                if with_trace {
                    v["trace"] = f.reduction.trace.iter().map(move_json).collect();
                }
                v
            })
            .collect();
        json!({
            "germ": {
                "n": self.n,
                "plus_counts": self.plus_counts,
                "minus_counts": self.minus_counts,
            },
            "z_verdict": verdict_json(&self.verdict),
            "field_verdicts": fields,
            "conclusion": self.conclusion.as_str(),
        })
    }

    pub fn to_text(&self, with_trace: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "germ on S^{}", self.n);
        let _ = writeln!(out, "  plus counts  p_k: {:?}", self.plus_counts);
        let _ = writeln!(out, "  minus counts q_k: {:?}", self.minus_counts);
        let v = &self.verdict;
        let _ = writeln!(out, "property P over Z: {} (via {})", v.status(), v.route());
        if let Some(o) = v.obstruction() {
            let _ = writeln!(out, "  obstruction: {o}");
        }
        if let Some(w) = v.witness() {
            for (k, b) in w.blocks().iter().enumerate() {
                if b.rows() > 0 && b.cols() > 0 {
                    let _ = writeln!(out, "  N_{k} = {b}");
                }
            }
        }
        if let Some(b) = v.search_bound() {
            let _ = writeln!(out, "  searched gauge entries in [-{b}, {b}]");
        }
        for f in &self.fields {
            let pairs: Vec<String> = f
                .canonical
                .pairs
                .iter()
                .map(|p| format!("{} -> {}", p.source, p.target))
                .collect();
            let _ = writeln!(
                out,
                "over {}: pairs [{}], {}",
                f.field,
                pairs.join(", "),
                if f.reduction.reducible {
                    "reducible to the trivial diagram"
                } else {
                    "not reducible"
                }
            );
            if with_trace {
                for m in &f.reduction.trace {
                    let _ = writeln!(out, "  {m}");
                }
            }
        }
        let _ = writeln!(out, "conclusion: {}", self.conclusion.describe());
        out
    }
}
