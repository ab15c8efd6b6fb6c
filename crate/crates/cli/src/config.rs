//! The job config read by `analyze` and `orbit --config`.

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use tribranch_core::characters::DEFAULT_PROCESI_CAP;
use tribranch_core::field::{
    parse_place, parse_ratfunc, parse_rational, Fp, Modulus, Nf, NumberField, Place, RootInterval, TextCoeff,
};
use tribranch_core::group::{GroupPresentation, Representation};
use tribranch_core::lattice::Matrix;
use tribranch_core::triangle::{delta_restriction, gamma_representation, TriangleData, PARAMETER};

use crate::{input_err, read_json, InputError};

pub const DEFAULT_WORD_LENGTH: usize = 8;
pub const DEFAULT_ORBIT_DEPTH: usize = 3;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(default = "schema_one")]
    pub schema: u32,
    pub representation: RepresentationSpec,
    #[serde(default)]
    pub places: Vec<String>,
    #[serde(default)]
    pub words: WordsSpec,
    #[serde(default)]
    pub budgets: Budgets,
}

fn schema_one() -> u32 {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RepresentationSpec {
    /// The built-in family at parameter `s`, for `Γ(p,q,r)` or its
    /// restriction to `Δ(p,q,r)`.
    Triangle {
        p: u32,
        q: u32,
        r: u32,
        #[serde(default)]
        group: TriangleGroup,
    },
    Explicit {
        arithmetic: Arithmetic,
        #[serde(default = "default_variable")]
        variable: String,
        generators: Vec<String>,
        #[serde(default)]
        relators: Vec<String>,
        /// One matrix per generator, rows of rational-function text.
        images: Vec<Vec<Vec<String>>>,
    },
}

fn default_variable() -> String {
    "t".into()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriangleGroup {
    #[default]
    Gamma,
    Delta,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum Arithmetic {
    Rational,
    /// `minpoly` lists rational coefficients from the constant term up;
    /// `root` optionally picks the real embedding nearest to it.
    NumberField {
        minpoly: Vec<String>,
        #[serde(default)]
        root: Option<f64>,
    },
    ModP {
        prime: u64,
    },
}

/// `"procesi"` for the Procesi set of the representation, or an explicit
/// list of words.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum WordsSpec {
    Named(String),
    List(Vec<String>),
}

impl Default for WordsSpec {
    fn default() -> Self {
        WordsSpec::Named("procesi".into())
    }
}

#[derive(Clone, Copy, Debug, Deserialize, serde::Serialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budgets {
    pub word_length: usize,
    pub orbit_depth: usize,
    pub procesi_cap: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { word_length: DEFAULT_WORD_LENGTH, orbit_depth: DEFAULT_ORBIT_DEPTH, procesi_cap: DEFAULT_PROCESI_CAP }
    }
}

/// A representation with the name of its variable.
pub struct Built<K: TextCoeff> {
    pub rep: Representation<K>,
    pub ctx: K::Ctx,
    pub variable: String,
    pub arithmetic: String,
}

pub enum BuiltRep {
    Nf(Built<Nf>),
    Fp(Built<Fp>),
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self, InputError> {
        let cfg: JobConfig = read_json(path)?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn from_json(text: &str) -> Result<Self, InputError> {
        let cfg: JobConfig = serde_json::from_str(text).map_err(input_err)?;
        cfg.check()?;
        Ok(cfg)
    }

    fn check(&self) -> Result<(), InputError> {
        if self.schema != 1 {
            return Err(InputError(format!("unsupported config schema {}", self.schema)));
        }
        if let WordsSpec::Named(n) = &self.words {
            if n != "procesi" {
                return Err(InputError(format!("unknown word set '{n}' (expected \"procesi\" or a list)")));
            }
        }
        Ok(())
    }

    pub fn build(&self) -> Result<BuiltRep, InputError> {
        match &self.representation {
            RepresentationSpec::Triangle { p, q, r, group } => {
                let td = TriangleData::builtin(*p, *q, *r).map_err(input_err)?;
                let rep = match group {
                    TriangleGroup::Gamma => gamma_representation(&td),
                    TriangleGroup::Delta => delta_restriction(&td),
                }
                .map_err(input_err)?;
                Ok(BuiltRep::Nf(Built {
                    rep,
                    ctx: td.field.clone(),
                    variable: PARAMETER.into(),
                    arithmetic: format!("number field {}", minpoly_text(&td.field)),
                }))
            }
            RepresentationSpec::Explicit { arithmetic, variable, generators, relators, images } => {
                let names: Vec<&str> = generators.iter().map(String::as_str).collect();
                let rels: Vec<&str> = relators.iter().map(String::as_str).collect();
                let pres = GroupPresentation::parse(&names, &rels).map_err(input_err)?;
                match arithmetic {
                    Arithmetic::Rational => {
                        let k = NumberField::rationals();
                        let rep = explicit(pres, images, &k, variable)?;
                        Ok(BuiltRep::Nf(Built { rep, ctx: k, variable: variable.clone(), arithmetic: "rational".into() }))
                    }
                    Arithmetic::NumberField { minpoly, root } => {
                        let coeffs = minpoly.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>, _>>().map_err(input_err)?;
                        let k: Arc<NumberField> =
                            NumberField::new(coeffs, root.map(|x| RootInterval::around(x, 1e-9))).map_err(input_err)?;
                        let rep = explicit(pres, images, &k, variable)?;
                        let arithmetic = format!("number field {}", minpoly_text(&k));
                        Ok(BuiltRep::Nf(Built { rep, ctx: k, variable: variable.clone(), arithmetic }))
                    }
                    Arithmetic::ModP { prime } => {
                        let m = Modulus::new(*prime).map_err(input_err)?;
                        let rep = explicit(pres, images, &m, variable)?;
                        Ok(BuiltRep::Fp(Built { rep, ctx: m, variable: variable.clone(), arithmetic: format!("mod {prime}") }))
                    }
                }
            }
        }
    }
}

fn minpoly_text(k: &NumberField) -> String {
    let terms: Vec<String> = k.minpoly().iter().map(|c| c.to_string()).collect();
    format!("[{}]", terms.join(", "))
}

fn explicit<K: TextCoeff>(
    pres: GroupPresentation,
    images: &[Vec<Vec<String>>],
    ctx: &K::Ctx,
    var: &str,
) -> Result<Representation<K>, InputError> {
    let mut mats = Vec::new();
    for (g, rows) in images.iter().enumerate() {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(InputError(format!("image {g} is not a nonempty square matrix")));
        }
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|e| parse_ratfunc::<K>(e, ctx, var)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| InputError(format!("image {g}: {e}")))?;
        mats.push(Matrix::from_rows(parsed));
    }
    Representation::new(pres, mats).map_err(input_err)
}

impl<K: TextCoeff> Built<K> {
    pub fn place(&self, src: &str) -> Result<Place<K>, InputError> {
        parse_place::<K>(src, &self.ctx).map_err(|e| InputError(format!("place '{src}': {e}")))
    }
}
