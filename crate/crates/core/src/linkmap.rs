//! The combinatorial model of a two-component link map: signed double points
//! with accessory linking numbers, goodness validation, double-point pairing,
//! the σ invariant (computed by two routes), Whitney-disk data, and the ω
//! invariant.
//!
//! No geometry is simulated here; `n(p)` and the interior intersection
//! weights `m(x)` are input data, and only their internal consistency is
//! checked.

use std::collections::BTreeMap;
use std::error::Error;
use std::fmt;

use num_bigint::BigInt;

use crate::gf2::Gf2;
use crate::laurent::{CoeffRing, LaurentPoly};
use crate::wall::{self, Sign, SignedIntersection};

/// A double point of one component: its sign and the linking number of an
/// accessory circle through it with the other component.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct DoublePoint {
    pub sign: Sign,
    pub n: i64,
}

impl DoublePoint {
    pub fn new(sign: Sign, n: i64) -> DoublePoint {
        DoublePoint { sign, n }
    }
}

/// Double-point data for both components. Each list carries the accessory
/// linking numbers measured against the opposite component.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinkMapModel {
    pub plus_points: Vec<DoublePoint>,
    pub minus_points: Vec<DoublePoint>,
}

/// Which component an operation refers to.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

impl LinkMapModel {
    pub fn new(plus_points: Vec<DoublePoint>, minus_points: Vec<DoublePoint>) -> LinkMapModel {
        LinkMapModel {
            plus_points,
            minus_points,
        }
    }

    pub fn points(&self, side: Side) -> &[DoublePoint] {
        match side {
            Side::Plus => &self.plus_points,
            Side::Minus => &self.minus_points,
        }
    }
}

/// Outcome of goodness and pairability checks. `pairs` holds index pairs
/// into the minus-point list, positive-signed point first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub plus_good: bool,
    pub minus_good: bool,
    pub pairable: bool,
    pub pairs: Option<Vec<(usize, usize)>>,
}

fn sign_sum(points: &[DoublePoint]) -> i64 {
    points.iter().map(|p| p.sign.as_int()).sum()
}

/// Greedy pairing of the minus points into opposite-sign pairs with equal
/// |n|, bucketed by |n| and matched in input order. Succeeds exactly when
/// every bucket balances.
fn pair_minus_points(points: &[DoublePoint]) -> Option<Vec<(usize, usize)>> {
    let mut buckets: BTreeMap<i64, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        let bucket = buckets.entry(p.n.abs()).or_default();
        match p.sign {
            Sign::Plus => bucket.0.push(i),
            Sign::Minus => bucket.1.push(i),
        }
    }
    let mut pairs = Vec::new();
    for (_, (pos, neg)) in buckets {
        if pos.len() != neg.len() {
            return None;
        }
        pairs.extend(pos.into_iter().zip(neg));
    }
    Some(pairs)
}

/// Goodness (vanishing signed self-intersection count per component) and
/// minus-side pairability.
pub fn validate(model: &LinkMapModel) -> ValidationReport {
    let plus_good = sign_sum(&model.plus_points) == 0;
    let minus_good = sign_sum(&model.minus_points) == 0;
    let pairs = pair_minus_points(&model.minus_points);
    ValidationReport {
        plus_good,
        minus_good,
        pairable: pairs.is_some(),
        pairs,
    }
}

/// The σ invariant of one component: `Σₚ sign(p)·(s^|n(p)| - 1)`. Always
/// vanishes at `s = 1`.
pub fn sigma(model: &LinkMapModel, side: Side) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for p in model.points(side) {
        let term = &LaurentPoly::monomial(p.n.abs(), 1) - &LaurentPoly::one();
        acc = &acc + &term.scale(p.sign.as_int());
    }
    acc
}

/// The same value computed through the self-intersection calculus: σ is the
/// image of `μ̂ = μ - self` under folding. A deliberate second route; must
/// agree with [`sigma`] exactly.
pub fn sigma_via_mu(model: &LinkMapModel, side: Side) -> LaurentPoly {
    let points: Vec<SignedIntersection> = model
        .points(side)
        .iter()
        .map(|p| SignedIntersection::new(p.sign, p.n))
        .collect();
    let (mu_hat, _self_count) = wall::mu_hat(&points);
    mu_hat.into_poly()
}

/// The linking number of a Whitney circle built from accessory circles with
/// linking numbers `lk_plus` and `lk_minus`: their absolute difference.
pub fn whitney_circle_lk(lk_plus: i64, lk_minus: i64) -> i64 {
    (lk_plus - lk_minus).abs()
}

/// Data of one framed Whitney disk: the pair's common |n| value and one
/// mod-2 weight per interior intersection point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhitneyDiskDatum {
    pub n: u32,
    pub points: Vec<Gf2>,
}

impl WhitneyDiskDatum {
    pub fn new(n: u32, points: Vec<Gf2>) -> WhitneyDiskDatum {
        WhitneyDiskDatum { n, points }
    }
}

/// Per-point weight sum `Σₓ (n + n·m(x) + m(x)) mod 2` over the disk's
/// interior intersections.
pub fn l_minus_from_weights(disk: &WhitneyDiskDatum) -> Gf2 {
    let n = Gf2::from_int(disk.n as i64);
    disk.points.iter().map(|&m| n + n * m + m).sum()
}

/// Parity shortcut for the same value: for odd n the weights collapse to the
/// intersection count mod 2; for even n to the weight sum.
pub fn l_minus_shortcut(disk: &WhitneyDiskDatum) -> Gf2 {
    if disk.n % 2 == 1 {
        Gf2::from_int(disk.points.len() as i64)
    } else {
        disk.points.iter().copied().sum()
    }
}

/// The disk's contribution to ω₋, computed from the per-point weights and
/// checked against the parity shortcut.
pub fn l_minus(disk: &WhitneyDiskDatum) -> Gf2 {
    let value = l_minus_from_weights(disk);
    assert_eq!(
        value,
        l_minus_shortcut(disk),
        "weight sum disagrees with parity shortcut on {disk:?}"
    );
    value
}

/// ω₋ of a disk collection: the mod-2 sum of the per-disk contributions.
pub fn omega_minus(disks: &[WhitneyDiskDatum]) -> Gf2 {
    disks.iter().map(l_minus).sum()
}

/// One handle of a constructed Whitney disk: the loop weight `m`, the number
/// of interior intersection pairs it produces, and the pair weights, which
/// sum to 1 within each pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessHandle {
    pub m_bit: Gf2,
    pub pair_count: usize,
    pub pair_bits: Vec<(Gf2, Gf2)>,
}

/// Per-pair record of a Whitney disk produced by the surgered-disk
/// construction, carrying both the raw disk data (enough for ω) and the
/// bookkeeping polynomials needed to replay the derivation: `q` expands the
/// other component over the basis spheres, `u` measures its intersections
/// with the pre-surgery disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructedDiskWitness {
    pub n: u32,
    pub handles: Vec<WitnessHandle>,
    pub u: LaurentPoly,
    pub q: LaurentPoly,
}

/// A violated witness constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessError {
    /// `pair_bits` length differs from the declared pair count.
    PairCountMismatch { handle: usize },
    /// A pair's weights do not sum to 1 mod 2.
    PairParity { handle: usize, pair: usize },
    /// Pair count has the wrong parity relative to the handle's m value.
    HandleCountParity { handle: usize },
    /// `u(1)` does not match the parity of the handle m values.
    UEvalParity,
    /// `q(1)` differs from n.
    QEvalMismatch,
    /// `u` or `q` is not over the integer ring.
    NotIntegerRing { field: &'static str },
}

impl fmt::Display for WitnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessError::PairCountMismatch { handle } => {
                write!(
                    f,
                    "handle {handle}: pair_bits length differs from pair_count"
                )
            }
            WitnessError::PairParity { handle, pair } => {
                write!(
                    f,
                    "handle {handle}, pair {pair}: weights do not sum to 1 mod 2"
                )
            }
            WitnessError::HandleCountParity { handle } => {
                write!(f, "handle {handle}: pair_count parity differs from m_bit")
            }
            WitnessError::UEvalParity => {
                write!(f, "u(1) parity differs from the sum of handle m values")
            }
            WitnessError::QEvalMismatch => write!(f, "q(1) differs from n"),
            WitnessError::NotIntegerRing { field } => {
                write!(f, "{field} must be an integer-ring polynomial")
            }
        }
    }
}

impl Error for WitnessError {}

/// A witness constraint violation, naming the witness it occurred in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessViolation {
    pub witness: usize,
    pub error: WitnessError,
}

impl fmt::Display for WitnessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "witness {}: {}", self.witness, self.error)
    }
}

impl Error for WitnessViolation {}

impl ConstructedDiskWitness {
    /// Parity of the handle m values.
    pub fn m_sum(&self) -> Gf2 {
        self.handles.iter().map(|h| h.m_bit).sum()
    }

    /// Check every structural constraint of the construction.
    pub fn validate(&self) -> Result<(), WitnessError> {
        if self.u.ring() != CoeffRing::Int {
            return Err(WitnessError::NotIntegerRing { field: "u" });
        }
        if self.q.ring() != CoeffRing::Int {
            return Err(WitnessError::NotIntegerRing { field: "q" });
        }
        for (hi, h) in self.handles.iter().enumerate() {
            if h.pair_bits.len() != h.pair_count {
                return Err(WitnessError::PairCountMismatch { handle: hi });
            }
            for (pi, &(a, b)) in h.pair_bits.iter().enumerate() {
                if a + b != Gf2::ONE {
                    return Err(WitnessError::PairParity {
                        handle: hi,
                        pair: pi,
                    });
                }
            }
            if Gf2::from_int(h.pair_count as i64) != h.m_bit {
                return Err(WitnessError::HandleCountParity { handle: hi });
            }
        }
        if self.u.eval_at_one_gf2() != self.m_sum() {
            return Err(WitnessError::UEvalParity);
        }
        if self.q.eval_at_one() != BigInt::from(self.n) {
            return Err(WitnessError::QEvalMismatch);
        }
        Ok(())
    }

    /// Flatten the pair weights into the raw disk datum they describe.
    pub fn expand_disk(&self) -> WhitneyDiskDatum {
        let mut points = Vec::new();
        for h in &self.handles {
            for &(a, b) in &h.pair_bits {
                points.push(a);
                points.push(b);
            }
        }
        WhitneyDiskDatum::new(self.n, points)
    }
}

/// ω₋ computed from constructed-disk witnesses: the sum over even-n
/// witnesses of their handle m parities. Each witness is also expanded to
/// its raw disk datum and the disk-level computation is asserted to agree.
pub fn omega_from_witness(witnesses: &[ConstructedDiskWitness]) -> Result<Gf2, WitnessViolation> {
    for (i, w) in witnesses.iter().enumerate() {
        w.validate()
            .map_err(|error| WitnessViolation { witness: i, error })?;
    }
    let direct: Gf2 = witnesses
        .iter()
        .filter(|w| w.n % 2 == 0)
        .map(|w| w.m_sum())
        .sum();
    let expanded: Vec<WhitneyDiskDatum> = witnesses.iter().map(|w| w.expand_disk()).collect();
    let via_disks = omega_minus(&expanded);
    assert_eq!(
        direct, via_disks,
        "witness sum disagrees with the expanded-disk computation"
    );
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dp(sign: i64, n: i64) -> DoublePoint {
        DoublePoint::new(Sign::from_int(sign).unwrap(), n)
    }

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms)
    }

    fn minus_model(points: &[(i64, i64)]) -> LinkMapModel {
        LinkMapModel::new(vec![], points.iter().map(|&(s, n)| dp(s, n)).collect())
    }

    #[test]
    fn validate_examples() {
        let r = validate(&minus_model(&[(1, 2), (-1, 2)]));
        assert!(r.minus_good && r.pairable);
        assert_eq!(r.pairs, Some(vec![(0, 1)]));

        let r = validate(&minus_model(&[(1, 2), (-1, 1)]));
        assert!(r.minus_good);
        assert!(!r.pairable);

        let r = validate(&minus_model(&[(1, 1), (1, 1), (-1, 1), (-1, 1)]));
        assert!(r.pairable);
        assert_eq!(r.pairs, Some(vec![(0, 2), (1, 3)]));
    }

    #[test]
    fn sigma_examples() {
        let m = LinkMapModel::new(
            vec![
                dp(1, 2),
                dp(-1, 1),
                dp(-1, 1),
                dp(-1, 1),
                dp(-1, 1),
                dp(1, 0),
                dp(1, 0),
                dp(1, 0),
            ],
            vec![],
        );
        assert!(validate(&m).plus_good);
        assert_eq!(sigma(&m, Side::Plus), p(&[(2, 1), (1, -4), (0, 3)]));

        let m = LinkMapModel::new(vec![dp(1, 3), dp(-1, 3)], vec![]);
        assert!(sigma(&m, Side::Plus).is_zero());

        // |n(p)| is used, so a negative accessory linking number folds
        let m = LinkMapModel::new(vec![dp(1, -2)], vec![]);
        assert_eq!(sigma(&m, Side::Plus), p(&[(2, 1), (0, -1)]));
    }

    #[test]
    fn sigma_two_routes_agree_on_examples() {
        let models = [
            LinkMapModel::new(
                vec![dp(1, 2), dp(-1, 1), dp(-1, -1), dp(1, 0)],
                vec![dp(1, 3), dp(-1, -3)],
            ),
            LinkMapModel::new(vec![dp(1, -2)], vec![]),
            LinkMapModel::default(),
        ];
        for m in &models {
            assert_eq!(sigma(m, Side::Plus), sigma_via_mu(m, Side::Plus));
            assert_eq!(sigma(m, Side::Minus), sigma_via_mu(m, Side::Minus));
        }
    }

    #[test]
    fn whitney_circle_lk_examples() {
        assert_eq!(whitney_circle_lk(3, 3), 0);
        assert_eq!(whitney_circle_lk(2, 0), 2);
        assert_eq!(whitney_circle_lk(-1, 1), 2);
    }

    fn disk(n: u32, bits: &[u8]) -> WhitneyDiskDatum {
        WhitneyDiskDatum::new(n, bits.iter().map(|&b| Gf2::from_int(b as i64)).collect())
    }

    #[test]
    fn l_minus_examples() {
        // n=2, one point with m=1: 2 + 2 + 1 = 5 ≡ 1
        assert_eq!(l_minus(&disk(2, &[1])), Gf2::ONE);
        // n=3, points [0,1]: (3+0+0) + (3+3+1) = 10 ≡ 0
        assert_eq!(l_minus(&disk(3, &[0, 1])), Gf2::ZERO);
        assert_eq!(l_minus(&disk(0, &[])), Gf2::ZERO);
    }

    #[test]
    fn omega_minus_examples() {
        assert_eq!(omega_minus(&[disk(2, &[1])]), Gf2::ONE);
        assert_eq!(omega_minus(&[disk(2, &[1]), disk(2, &[1])]), Gf2::ZERO);
        assert_eq!(omega_minus(&[]), Gf2::ZERO);
    }

    fn handle(m: u8, pairs: &[(u8, u8)]) -> WitnessHandle {
        WitnessHandle {
            m_bit: Gf2::from_int(m as i64),
            pair_count: pairs.len(),
            pair_bits: pairs
                .iter()
                .map(|&(a, b)| (Gf2::from_int(a as i64), Gf2::from_int(b as i64)))
                .collect(),
        }
    }

    #[test]
    fn omega_from_witness_examples() {
        // even n with one odd handle contributes its m parity
        let w = ConstructedDiskWitness {
            n: 2,
            handles: vec![handle(1, &[(1, 0)])],
            u: p(&[(0, 1)]),
            q: p(&[(0, 1), (1, 1)]),
        };
        assert_eq!(omega_from_witness(&[w]).unwrap(), Gf2::ONE);

        // odd n contributes nothing
        let w = ConstructedDiskWitness {
            n: 1,
            handles: vec![handle(1, &[(0, 1)])],
            u: p(&[(1, 1)]),
            q: p(&[(0, 1)]),
        };
        assert_eq!(omega_from_witness(&[w]).unwrap(), Gf2::ZERO);

        // a pair-count parity breach is named
        let w = ConstructedDiskWitness {
            n: 2,
            handles: vec![handle(1, &[(1, 0), (0, 1)])],
            u: p(&[(0, 1)]),
            q: p(&[(0, 2)]),
        };
        let err = omega_from_witness(&[w]).unwrap_err();
        assert_eq!(err.witness, 0);
        assert_eq!(err.error, WitnessError::HandleCountParity { handle: 0 });
    }

    #[test]
    fn witness_validation_names_each_breach() {
        let good = ConstructedDiskWitness {
            n: 2,
            handles: vec![handle(1, &[(1, 0)])],
            u: p(&[(0, 1)]),
            q: p(&[(0, 2)]),
        };
        assert!(good.validate().is_ok());

        let mut w = good.clone();
        w.handles[0].pair_count = 2;
        assert_eq!(
            w.validate(),
            Err(WitnessError::PairCountMismatch { handle: 0 })
        );

        let mut w = good.clone();
        w.handles[0].pair_bits[0] = (Gf2::ONE, Gf2::ONE);
        assert_eq!(
            w.validate(),
            Err(WitnessError::PairParity { handle: 0, pair: 0 })
        );

        let mut w = good.clone();
        w.u = p(&[(0, 2)]);
        assert_eq!(w.validate(), Err(WitnessError::UEvalParity));

        let mut w = good.clone();
        w.q = p(&[(0, 3)]);
        assert_eq!(w.validate(), Err(WitnessError::QEvalMismatch));

        let mut w = good;
        w.q = w.q.reduce_mod2();
        assert_eq!(
            w.validate(),
            Err(WitnessError::NotIntegerRing { field: "q" })
        );
    }

    // exhaustive pairing oracle used to check the greedy matcher
    fn brute_force_pairable(points: &[DoublePoint]) -> bool {
        fn go(remaining: &mut Vec<DoublePoint>) -> bool {
            if remaining.is_empty() {
                return true;
            }
            let first = remaining.remove(0);
            for j in 0..remaining.len() {
                if remaining[j].sign == first.sign.opposite()
                    && remaining[j].n.abs() == first.n.abs()
                {
                    let partner = remaining.remove(j);
                    if go(remaining) {
                        return true;
                    }
                    remaining.insert(j, partner);
                }
            }
            remaining.insert(0, first);
            false
        }
        let mut points = points.to_vec();
        points.len().is_multiple_of(2) && go(&mut points)
    }

    fn arb_points(max_len: usize) -> impl Strategy<Value = Vec<DoublePoint>> {
        proptest::collection::vec(
            (proptest::bool::ANY, -6i64..=6).prop_map(|(pos, n)| dp(if pos { 1 } else { -1 }, n)),
            0..=max_len,
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn sigma_vanishes_at_one(points in arb_points(12)) {
            let m = LinkMapModel::new(points.clone(), points);
            prop_assert!(sigma(&m, Side::Plus).eval_at_one() == num_bigint::BigInt::from(0));
        }

        #[test]
        fn sigma_routes_agree(plus in arb_points(12), minus in arb_points(12)) {
            let m = LinkMapModel::new(plus, minus);
            prop_assert_eq!(sigma(&m, Side::Plus), sigma_via_mu(&m, Side::Plus));
            prop_assert_eq!(sigma(&m, Side::Minus), sigma_via_mu(&m, Side::Minus));
        }

        #[test]
        fn pairable_iff_sigma_and_self_vanish(minus in arb_points(8)) {
            let m = LinkMapModel::new(vec![], minus.clone());
            let report = validate(&m);
            let oracle = brute_force_pairable(&minus);
            prop_assert_eq!(report.pairable, oracle);
            let algebraic =
                sigma(&m, Side::Minus).is_zero() && sign_sum(&minus) == 0;
            prop_assert_eq!(report.pairable, algebraic);
        }

        #[test]
        fn weight_sum_equals_shortcut(n in 0u32..=6, bits in proptest::collection::vec(0u8..=1, 0..8)) {
            let d = disk(n, &bits);
            prop_assert_eq!(l_minus_from_weights(&d), l_minus_shortcut(&d));
        }
    }
}
