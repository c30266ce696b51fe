//! JSON input formats. See `docs/formats.md` for the schema.

use pqclab_core::{
    condexp, AlgebraSpec, CMatrix, CVector, Channel, DensityOperator, Tolerance, C64,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// `[re, im]`.
pub type ComplexJson = [f64; 2];
/// Row-major matrix of complex entries.
pub type MatrixJson = Vec<Vec<ComplexJson>>;
pub type VectorJson = Vec<ComplexJson>;

pub fn matrix_from_json(rows: &MatrixJson) -> Result<CMatrix, CliError> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 {
        return Err(CliError::Parse("empty matrix".into()));
    }
    if let Some(bad) = rows.iter().position(|r| r.len() != ncols) {
        return Err(CliError::Parse(format!(
            "ragged matrix: row {bad} has {} entries, row 0 has {ncols}",
            rows[bad].len()
        )));
    }
    Ok(CMatrix::from_fn(nrows, ncols, |i, j| {
        let [re, im] = rows[i][j];
        C64::new(re, im)
    }))
}

pub fn matrix_to_json(m: &CMatrix) -> MatrixJson {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                .collect()
        })
        .collect()
}

pub fn vector_from_json(v: &VectorJson) -> Result<CVector, CliError> {
    if v.is_empty() {
        return Err(CliError::Parse("empty vector".into()));
    }
    Ok(CVector::from_iterator(
        v.len(),
        v.iter().map(|&[re, im]| C64::new(re, im)),
    ))
}

pub fn vector_to_json(v: &CVector) -> VectorJson {
    v.iter().map(|z| [z.re, z.im]).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedChannel {
    Identity,
    CompletelyDepolarizing,
    DephasingZ,
    FrameN2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ChannelSpecFile {
    Kraus {
        operators: Vec<MatrixJson>,
    },
    RandomUnitary {
        probabilities: Vec<f64>,
        unitaries: Vec<MatrixJson>,
    },
    Depolarizing {
        p: f64,
        d: usize,
    },
    Condexp {
        algebra: AlgebraFile,
    },
    Named {
        name: NamedChannel,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
    },
}

impl ChannelSpecFile {
    pub fn from_channel(ch: &Channel) -> Self {
        Self::Kraus {
            operators: ch.kraus().iter().map(matrix_to_json).collect(),
        }
    }

    pub fn build(&self, tol: Tolerance) -> Result<Channel, CliError> {
        let invalid = |e: pqclab_core::Error| CliError::Parse(e.to_string());
        match self {
            Self::Kraus { operators } => {
                let kraus = operators
                    .iter()
                    .map(matrix_from_json)
                    .collect::<Result<Vec<_>, _>>()?;
                Channel::from_kraus(kraus, tol).map_err(invalid)
            }
            Self::RandomUnitary {
                probabilities,
                unitaries,
            } => {
                let unitaries = unitaries
                    .iter()
                    .map(matrix_from_json)
                    .collect::<Result<Vec<_>, _>>()?;
                Channel::random_unitary(probabilities, unitaries, tol).map_err(invalid)
            }
            Self::Depolarizing { p, d } => Channel::depolarizing(*p, *d).map_err(invalid),
            Self::Condexp { algebra } => {
                let alg = algebra.build(tol)?;
                condexp::condexp_channel(&alg).map_err(CliError::Core)
            }
            Self::Named { name, dim } => named_channel(*name, *dim),
        }
    }
}

fn named_channel(name: NamedChannel, dim: Option<usize>) -> Result<Channel, CliError> {
    let fixed = |expected: usize| match dim {
        Some(d) if d != expected => Err(CliError::Parse(format!(
            "{name:?} has fixed dimension {expected}, got {d}"
        ))),
        _ => Ok(()),
    };
    let free = || match dim {
        Some(0) => Err(CliError::Parse("dimension must be positive".into())),
        Some(d) => Ok(d),
        None => Ok(2),
    };
    match name {
        NamedChannel::Identity => Ok(Channel::identity(free()?)),
        NamedChannel::CompletelyDepolarizing => Ok(Channel::completely_depolarizing(free()?)),
        NamedChannel::DephasingZ => fixed(2).map(|_| Channel::dephasing_z()),
        NamedChannel::FrameN2 => fixed(4).map(|_| condexp::collective_noise_channel_n2().0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedAlgebra {
    /// Diagonal matrices on `C^2`.
    Delta2,
    Diagonal,
    Scalars,
    Full,
    FrameN2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraFile {
    /// Blocks are `[multiplicity, size]` pairs; the basis change defaults to
    /// the identity.
    Blocks {
        blocks: Vec<[usize; 2]>,
        #[serde(default)]
        zero_dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        basis_change: Option<MatrixJson>,
    },
    Named {
        name: NamedAlgebra,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
    },
}

impl AlgebraFile {
    pub fn build(&self, tol: Tolerance) -> Result<AlgebraSpec, CliError> {
        let invalid = |e: pqclab_core::Error| CliError::Parse(e.to_string());
        match self {
            Self::Blocks {
                blocks,
                zero_dim,
                basis_change,
            } => {
                let blocks: Vec<(usize, usize)> = blocks.iter().map(|&[m, n]| (m, n)).collect();
                match basis_change {
                    Some(u) => AlgebraSpec::new(blocks, *zero_dim, matrix_from_json(u)?, tol),
                    None => AlgebraSpec::standard(blocks, *zero_dim),
                }
                .map_err(invalid)
            }
            Self::Named { name, dim } => {
                let d = match (name, dim) {
                    (_, Some(0)) => {
                        return Err(CliError::Parse("dimension must be positive".into()))
                    }
                    (NamedAlgebra::Delta2, Some(d)) if *d != 2 => {
                        return Err(CliError::Parse(format!("delta2 has dimension 2, got {d}")))
                    }
                    (NamedAlgebra::FrameN2, Some(d)) if *d != 4 => {
                        return Err(CliError::Parse(format!(
                            "frame_n2 has dimension 4, got {d}"
                        )))
                    }
                    (_, Some(d)) => *d,
                    (_, None) => 2,
                };
                Ok(match name {
                    NamedAlgebra::Delta2 | NamedAlgebra::Diagonal => AlgebraSpec::diagonal(d),
                    NamedAlgebra::Scalars => AlgebraSpec::scalars(d),
                    NamedAlgebra::Full => AlgebraSpec::full(d),
                    NamedAlgebra::FrameN2 => condexp::collective_noise_channel_n2().1,
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Rho0File {
    MaximallyMixed { dim: usize },
    Matrix { matrix: MatrixJson },
}

impl Rho0File {
    pub fn build(&self, tol: Tolerance) -> Result<DensityOperator, CliError> {
        match self {
            Self::MaximallyMixed { dim: 0 } => {
                Err(CliError::Parse("dimension must be positive".into()))
            }
            Self::MaximallyMixed { dim } => Ok(DensityOperator::maximally_mixed(*dim)),
            Self::Matrix { matrix } => DensityOperator::new(matrix_from_json(matrix)?, tol)
                .map_err(|e| CliError::Parse(e.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatesFile {
    pub states: Vec<VectorJson>,
}

impl StatesFile {
    pub fn build(&self) -> Result<Vec<CVector>, CliError> {
        self.states.iter().map(vector_from_json).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorFile {
    pub vector: VectorJson,
}

#[cfg(test)]
mod tests {
    use super::*;
    use pqclab_core::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn parse<T: for<'de> Deserialize<'de>>(s: &str) -> T {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn named_channels_parse() {
        let tol = Tolerance::default();
        let spec: ChannelSpecFile = parse(r#"{"kind":"named","name":"dephasing_z"}"#);
        assert!(spec
            .build(tol)
            .unwrap()
            .equivalent(&Channel::dephasing_z(), tol));
        let spec: ChannelSpecFile = parse(r#"{"kind":"named","name":"identity","dim":3}"#);
        assert_eq!(spec.build(tol).unwrap().dim_in(), 3);
        let spec: ChannelSpecFile = parse(r#"{"kind":"named","name":"frame_n2","dim":2}"#);
        assert!(spec.build(tol).is_err());
    }

    #[test]
    fn condexp_spec_matches_depolarizing() {
        let tol = Tolerance::default();
        let spec: ChannelSpecFile =
            parse(r#"{"kind":"condexp","algebra":{"kind":"named","name":"scalars","dim":3}}"#);
        let ch = spec.build(tol).unwrap();
        assert!(ch.equivalent(&Channel::completely_depolarizing(3), tol));
    }

    #[test]
    fn rejects_unknown_fields_and_ragged_rows() {
        assert!(serde_json::from_str::<ChannelSpecFile>(
            r#"{"kind":"depolarizing","p":1,"d":2,"q":0}"#
        )
        .is_err());
        let spec: ChannelSpecFile =
            parse(r#"{"kind":"kraus","operators":[[[[1,0],[0,0]],[[0,0]]]]}"#);
        assert!(matches!(
            spec.build(Tolerance::default()),
            Err(CliError::Parse(_))
        ));
    }

    #[test]
    fn non_trace_preserving_kraus_is_a_parse_error() {
        let spec: ChannelSpecFile =
            parse(r#"{"kind":"kraus","operators":[[[[1,0],[0,0]],[[0,0],[0,0]]]]}"#);
        assert!(matches!(
            spec.build(Tolerance::default()),
            Err(CliError::Parse(_))
        ));
    }

    #[test]
    fn algebra_files() {
        let tol = Tolerance::default();
        let a: AlgebraFile = parse(r#"{"kind":"blocks","blocks":[[2,2]]}"#);
        let a = a.build(tol).unwrap();
        assert_eq!((a.dim(), a.blocks()), (4, &[(2, 2)][..]));
        let a: AlgebraFile = parse(r#"{"kind":"blocks","blocks":[[1,1]],"zero_dim":1}"#);
        assert!(!a.build(tol).unwrap().is_unital());
        let a: AlgebraFile = parse(
            r#"{"kind":"blocks","blocks":[[1,1],[1,1]],"basis_change":[[[1,0],[1,0]],[[0,0],[1,0]]]}"#,
        );
        assert!(matches!(a.build(tol), Err(CliError::Parse(_))));
    }

    #[test]
    fn rho0_files() {
        let tol = Tolerance::default();
        let r: Rho0File = parse(r#"{"kind":"maximally_mixed","dim":4}"#);
        assert_eq!(r.build(tol).unwrap().dim(), 4);
        let r: Rho0File = parse(r#"{"kind":"matrix","matrix":[[[1,0],[0,0]],[[0,0],[0,0]]]}"#);
        assert!(r.build(tol).is_ok());
        let r: Rho0File = parse(r#"{"kind":"matrix","matrix":[[[2,0],[0,0]],[[0,0],[0,0]]]}"#);
        assert!(r.build(tol).is_err());
    }

    proptest::proptest! {
        #[test]
        fn serialized_channels_round_trip(seed in proptest::prelude::any::<u64>(), d in 1usize..5, k in 1usize..4) {
            let tol = Tolerance::default();
            let ch = random::channel(&mut ChaCha8Rng::seed_from_u64(seed), d, k);
            let text = serde_json::to_string(&ChannelSpecFile::from_channel(&ch)).unwrap();
            let back: ChannelSpecFile = serde_json::from_str(&text).unwrap();
            proptest::prop_assert!(back.build(tol).unwrap().equivalent(&ch, tol));
        }
    }
}
