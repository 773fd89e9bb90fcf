//! Full character tables of `S_n` and `A_n` with exact entries.
//!
//! `S_n`: classes in ascending lexicographic order of cycle type, characters
//! in descending lexicographic order of `λ` (trivial first).
//! `A_n`: classes as in [`conjugacy_classes`], characters sorted by degree
//! then label. A self-conjugate `λ` gives `λ+` and `λ-`; on the split class
//! whose cycle type is the diagonal hook list `h` of `λ`, `λ+` takes
//! `(ε + √(ε∏h))/2` on the `Plus` half, with `ε = (-1)^{(n - len h)/2}`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};

use super::{CharError, MnEvaluator};
use crate::partition::{partitions, Partition};
use crate::perm::{conjugacy_classes, ClassLabel, ConjugacyClassSn, GroupKind, Half};
use crate::surd::Surd;

pub const DEFAULT_SN_TABLE_BOUND: usize = 12;
pub const DEFAULT_AN_TABLE_BOUND: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CharLabel {
    pub partition: Partition,
    /// Set for the two constituents of a self-conjugate `λ` in `A_n`.
    pub half: Option<Half>,
}

impl fmt::Display for CharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.partition)?;
        match self.half {
            Some(Half::Plus) => write!(f, "+"),
            Some(Half::Minus) => write!(f, "-"),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub group_label: String,
    pub kind: GroupKind,
    pub n: usize,
    pub classes: Vec<ConjugacyClassSn>,
    pub char_labels: Vec<CharLabel>,
    /// `values[χ][C]`.
    pub values: Vec<Vec<Surd>>,
}

impl CharacterTable {
    pub fn order(&self) -> BigUint {
        self.kind.order(self.n)
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// First column, as integers.
    pub fn degrees(&self) -> Vec<BigInt> {
        self.values
            .iter()
            .map(|row| row[0].as_integer().expect("degrees are integers"))
            .collect()
    }

    pub fn class_index(&self, label: &ClassLabel) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.cycle_type == label.cycle_type && c.half == label.half)
    }

    /// Index of the trivial character.
    pub fn trivial_index(&self) -> usize {
        self.char_labels
            .iter()
            .position(|l| l.partition.len() <= 1)
            .expect("trivial character present")
    }

    /// Exact row and column orthogonality; the error names the first failure.
    pub fn check_orthogonality(&self) -> Result<(), String> {
        let order = Surd::from_int(BigInt::from(self.order()));
        let sizes: Vec<Surd> = self
            .classes
            .iter()
            .map(|c| Surd::from_int(BigInt::from(c.class_size.clone())))
            .collect();
        let k = self.num_classes();
        if self.values.len() != k {
            return Err(format!("{} characters for {k} classes", self.values.len()));
        }
        for i in 0..k {
            for j in i..k {
                let mut s = Surd::zero();
                for (c, size) in sizes.iter().enumerate() {
                    s += &(size * &(&self.values[i][c] * &self.values[j][c].conj()));
                }
                let want = if i == j { order.clone() } else { Surd::zero() };
                if s != want {
                    return Err(format!(
                        "rows {} and {}: {s}",
                        self.char_labels[i], self.char_labels[j]
                    ));
                }
            }
        }
        for a in 0..k {
            for b in a..k {
                let mut s = Surd::zero();
                for row in &self.values {
                    s += &(&row[a] * &row[b].conj());
                }
                let want = if a == b {
                    Surd::from_int(BigInt::from(self.classes[a].centralizer_order.clone()))
                } else {
                    Surd::zero()
                };
                if s != want {
                    return Err(format!("columns {a} and {b}: {s}"));
                }
            }
        }
        Ok(())
    }
}

struct ClassesJson<'a>(&'a [ConjugacyClassSn]);
struct CharsJson<'a>(&'a CharacterTable);

fn big_json<S: SerializeMap>(m: &mut S, key: &str, v: &BigUint) -> Result<(), S::Error> {
    match v.to_u64() {
        Some(x) => m.serialize_entry(key, &x),
        None => m.serialize_entry(key, &v.to_string()),
    }
}

impl Serialize for ClassesJson<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(ClassJson))
    }
}

struct ClassJson<'a>(&'a ConjugacyClassSn);

impl Serialize for ClassJson<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(3))?;
        m.serialize_entry("type", &self.0.label().to_string())?;
        big_json(&mut m, "size", &self.0.class_size)?;
        big_json(&mut m, "centralizer", &self.0.centralizer_order)?;
        m.end()
    }
}

impl Serialize for CharsJson<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(
            self.0
                .char_labels
                .iter()
                .zip(&self.0.values)
                .map(|(l, v)| serde_json::json!({ "label": l.to_string(), "values": v })),
        )
    }
}

/// `{group, classes: [{type, size, centralizer}], characters: [{label, values}]}`.
impl Serialize for CharacterTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CharacterTable", 3)?;
        st.serialize_field("group", &self.group_label)?;
        st.serialize_field("classes", &ClassesJson(&self.classes))?;
        st.serialize_field("characters", &CharsJson(self))?;
        st.end()
    }
}

/// Rows `χ^λ` for the given `λ` over the given cycle types, one worker per
/// row with its own memo.
fn mn_rows(lambdas: &[Partition], types: &[Partition]) -> Vec<Vec<BigInt>> {
    lambdas
        .par_iter()
        .map(|lambda| {
            types
                .iter()
                .map(|mu| MnEvaluator::new(mu).value(lambda))
                .collect()
        })
        .collect()
}

pub fn sn_character_table(n: usize) -> Result<CharacterTable, CharError> {
    sn_character_table_with_bound(n, DEFAULT_SN_TABLE_BOUND)
}

pub fn sn_character_table_with_bound(n: usize, bound: usize) -> Result<CharacterTable, CharError> {
    if n == 0 {
        return Err(CharError::InvalidParameter("n must be positive".into()));
    }
    if n > bound {
        return Err(CharError::SizeGuardExceeded { n, bound });
    }
    let classes = conjugacy_classes(n, GroupKind::Sn);
    let types: Vec<Partition> = classes.iter().map(|c| c.cycle_type.clone()).collect();
    let lambdas = partitions(n);
    let values = mn_rows(&lambdas, &types)
        .into_iter()
        .map(|row| row.into_iter().map(Surd::from_int).collect())
        .collect();
    Ok(CharacterTable {
        group_label: GroupKind::Sn.label(n),
        kind: GroupKind::Sn,
        n,
        classes,
        char_labels: lambdas
            .into_iter()
            .map(|partition| CharLabel {
                partition,
                half: None,
            })
            .collect(),
        values,
    })
}

pub fn an_character_table(n: usize) -> Result<CharacterTable, CharError> {
    an_character_table_with_bound(n, DEFAULT_AN_TABLE_BOUND)
}

pub fn an_character_table_with_bound(n: usize, bound: usize) -> Result<CharacterTable, CharError> {
    if n == 0 {
        return Err(CharError::InvalidParameter("n must be positive".into()));
    }
    if n > bound {
        return Err(CharError::SizeGuardExceeded { n, bound });
    }
    let classes = conjugacy_classes(n, GroupKind::An);
    let types: Vec<Partition> = classes.iter().map(|c| c.cycle_type.clone()).collect();
    // one representative per pair {λ, λᵀ}: the lexicographically larger
    let lambdas: Vec<Partition> = partitions(n)
        .into_iter()
        .filter(|l| *l >= l.conjugate())
        .collect();
    let rows = mn_rows(&lambdas, &types);
    let half_rational =
        |v: &BigInt| Surd::from_rational(BigRational::new(v.clone(), BigInt::from(2)));

    let mut chars: Vec<(CharLabel, Vec<Surd>)> = Vec::new();
    for (lambda, row) in lambdas.into_iter().zip(rows) {
        if n == 1 || !lambda.is_self_conjugate() {
            let values = row.into_iter().map(Surd::from_int).collect();
            chars.push((
                CharLabel {
                    partition: lambda,
                    half: None,
                },
                values,
            ));
            continue;
        }
        let h = lambda.diagonal_hooks();
        let h_type = Partition::from_unsorted(h.clone());
        let eps: i64 = if ((n - h.len()) / 2).is_multiple_of(2) {
            1
        } else {
            -1
        };
        let disc = eps * h.iter().map(|&x| x as i64).product::<i64>();
        let root = Surd::sqrt(disc) * Surd::from_rational(BigRational::new(1.into(), 2.into()));
        let base = Surd::from_rational(BigRational::new(eps.into(), 2.into()));
        for half in [Half::Plus, Half::Minus] {
            let values = classes
                .iter()
                .zip(&row)
                .map(|(c, v)| match c.half {
                    Some(class_half) if c.cycle_type == h_type => {
                        if (class_half == Half::Plus) == (half == Half::Plus) {
                            &base + &root
                        } else {
                            &base - &root
                        }
                    }
                    _ => half_rational(v),
                })
                .collect();
            chars.push((
                CharLabel {
                    partition: lambda.clone(),
                    half: Some(half),
                },
                values,
            ));
        }
    }
    chars.sort_by(|(la, va), (lb, vb)| {
        let da = va[0].rational_part();
        let db = vb[0].rational_part();
        da.cmp(&db).then_with(|| la.cmp(lb))
    });
    debug_assert!(chars.iter().all(|(_, v)| !v[0].rational_part().is_zero()));
    let (char_labels, values) = chars.into_iter().unzip();
    Ok(CharacterTable {
        group_label: GroupKind::An.label(n),
        kind: GroupKind::An,
        n,
        classes,
        char_labels,
        values,
    })
}
