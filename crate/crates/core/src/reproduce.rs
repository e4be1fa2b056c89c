//! Reference configurations and the gated reproduction checks shared by the
//! acceptance suite and the command-line reproduction report.

use std::collections::BTreeSet;
use std::error::Error;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abelian_unipotent::{build_rank_metric_code, construct_code, distance_bound, BlockSubspaceLayout};
use crate::finite_field::{BaseField, FieldSpec};
use crate::group_action::{Ambient, FiniteGroup, GroupElement, DEFAULT_GROUP_CAP};
use crate::gu_partition::{fast_min_distance, interdistance, partition};
use crate::matrix_fq::MatrixFq;
use crate::multishot::{assemble, build_alphabet_partition, orbits, validate_component_codes, ComponentCode, PartitionTree};
use crate::orbit_code::{generate_orbit, spread_code, DistanceMultiset, OrbitCode, VoronoiMode};
use crate::subspace::{enumerate_grassmannian, gaussian_binomial, Subspace};

/// `GF(2^6)` modulo `x^6 + x + 1`.
pub fn gf64() -> Arc<FieldSpec> {
    FieldSpec::new(2, 1, 6, &[1, 1, 0, 0, 0, 0, 1]).expect("primitive")
}

/// `GF(2^4)` modulo `x^4 + x + 1`.
pub fn gf16() -> Arc<FieldSpec> {
    FieldSpec::new(2, 1, 4, &[1, 1, 0, 0, 1]).expect("primitive")
}

/// Nonzero exponents of the 3-dimensional cyclic orbit code with parameters (6, 63, 4, 3).
pub const CYCLIC_63: [u32; 7] = [1, 8, 12, 26, 27, 32, 35];
/// Nonzero exponents of the subspace used for the `⟨α^3⟩ ⊃ ⟨α^9⟩` profile.
pub const PROFILE_V: [u32; 7] = [0, 8, 10, 20, 48, 59, 61];
/// Nonzero exponents of the subspace used for the `⟨α⟩ / ⟨α^9⟩` reduced search.
pub const REDUCED_V: [u32; 7] = [0, 1, 4, 6, 16, 24, 33];
/// Interdistances `d_S(V, α^{i+9j} V)` for `i = 1..4`, `j = 0..6` (reference values).
pub const REDUCED_TABLE: [[u32; 7]; 4] = [
    [4, 4, 6, 6, 6, 4, 6],
    [4, 6, 4, 4, 6, 4, 6],
    [4, 4, 6, 4, 4, 4, 4],
    [4, 6, 6, 4, 4, 6, 4],
];
/// Representatives of the six `⟨α⟩ ⋊ ⟨σ⟩` orbits on `G_2(6,3)` minus the spread, with orbit sizes.
pub const SEMIDIRECT_REPS: [([u32; 7], usize); 6] = [
    ([0, 1, 4, 6, 16, 24, 33], 126),
    ([0, 1, 2, 6, 7, 12, 26], 378),
    ([7, 16, 18, 28, 32, 49, 52], 189),
    ([1, 3, 12, 13, 18, 26, 48], 378),
    ([1, 18, 22, 29, 42, 43, 48], 126),
    ([4, 17, 26, 39, 54, 61, 62], 189),
];
/// Level counts (fast, naive) of the `⟨α⟩ > ⟨α^3⟩ > ⟨α^9⟩` tree, levels 1 to 3.
pub const TREE_COUNTS: [(usize, usize); 3] = [(616, 42966), (154, 13860), (132, 4158)];

/// Basis of the ternary 3×3 rank-metric code with 729 codewords.
pub const TERNARY_GENERATORS: [&str; 6] = [
    "1,0,0;0,1,0;0,0,0",
    "0,0,0;0,1,0;0,0,1",
    "0,0,1;0,1,0;0,1,0",
    "0,0,2;2,0,0;0,1,0",
    "1,1,2;0,1,2;2,0,1",
    "0,0,0;0,0,1;2,1,1",
];
/// Initial point `[I_3 | A]` for the ternary unipotent code.
pub const TERNARY_LAYOUT: &str = "1,0,0,1,2,0;0,1,0,1,0,0;0,0,1,0,2,1";

/// Exponents of the subspaces of `G_2(4,2)` used for the Voronoi checks.
pub const VORONOI_V: [[u32; 3]; 3] = [[0, 1, 4], [0, 2, 8], [0, 5, 10]];
/// The reference region of `V_1` as `(orbit, exponent)` pairs meaning `α^e V_orbit`.
pub const VORONOI_LISTING: [(usize, u32); 18] = [
    (0, 1),
    (0, 3),
    (0, 4),
    (0, 11),
    (0, 12),
    (0, 14),
    (1, 0),
    (1, 1),
    (1, 2),
    (1, 4),
    (1, 7),
    (1, 8),
    (1, 11),
    (1, 13),
    (1, 14),
    (2, 0),
    (2, 1),
    (2, 4),
];

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{mark}] {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

type Outcome = Result<(bool, String), Box<dyn Error>>;

pub const CRITERIA: [(u32, &str); 12] = [
    (1, "cyclic orbit code (6,63,4,3)"),
    (2, "ternary unipotent code (6,729,4,3)"),
    (3, "distance 2·rank(H) for [I_r | A]"),
    (4, "distance bound 2·rank([AH;CH])"),
    (5, "spread codes"),
    (6, "subcode distance profile and inverse symmetry"),
    (7, "reduced minimum distance equals exhaustive"),
    (8, "reduced search with H = ⟨α^9⟩"),
    (9, "multishot alphabet tree counts"),
    (10, "Grassmannian enumeration sizes"),
    (11, "Voronoi region symmetry"),
    (12, "assembled multishot codes meet the design distance"),
];

pub fn run(id: u32) -> Option<CriterionResult> {
    let (_, name) = CRITERIA.iter().find(|(i, _)| *i == id)?;
    let outcome = match id {
        1 => cyclic_code(),
        2 => ternary_unipotent(),
        3 => special_layout_distances(),
        4 => general_layout_bound(),
        5 => spreads(),
        6 => subcode_profile(),
        7 => reduced_equals_exhaustive(),
        8 => reduced_search(),
        9 => alphabet_tree(),
        10 => grassmannian_sizes(),
        11 => voronoi_symmetry(),
        12 => multishot_assemblies(),
        _ => unreachable!(),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    Some(CriterionResult {
        id,
        name: name.to_string(),
        passed,
        detail,
    })
}

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().filter_map(|(id, _)| run(*id)).collect()
}

pub fn cyclic_group(fs: &Arc<FieldSpec>, order: u32) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::scalar_subgroup(Ambient::field(fs.clone()), order).expect("order divides q^n - 1"))
}

pub fn field_subspace(fs: &FieldSpec, exps: &[u32]) -> Subspace {
    Subspace::from_field_elements(fs, exps).expect("nonzero elements")
}

pub fn ternary_rank_code_generators() -> Vec<MatrixFq> {
    let f3 = BaseField::prime(3).expect("prime");
    TERNARY_GENERATORS.iter().map(|s| MatrixFq::parse(f3.clone(), s).expect("literal")).collect()
}

pub fn ternary_layout() -> BlockSubspaceLayout {
    let f3 = BaseField::prime(3).expect("prime");
    BlockSubspaceLayout::from_matrix(MatrixFq::parse(f3, TERNARY_LAYOUT).expect("literal")).expect("full rank")
}

/// `G_2(6,3)` minus the spread `C_⟨α⟩(F_{2^3})`.
pub fn spread_complement(fs: &Arc<FieldSpec>, k: usize) -> Result<Vec<Subspace>, Box<dyn Error>> {
    let spread: BTreeSet<Subspace> = spread_code(fs.clone(), k)?.codewords().iter().cloned().collect();
    Ok(enumerate_grassmannian(fs.base().clone(), fs.degree(), k)?
        .filter(|s| !spread.contains(s))
        .collect())
}

/// `⟨α⟩ > ⟨α^3⟩ > ⟨α^9⟩` tree over `G_2(6,3)` minus the spread.
pub fn alphabet_tree_gf64() -> Result<PartitionTree, Box<dyn Error>> {
    let fs = gf64();
    let alphabet = spread_complement(&fs, 3)?;
    let series: Vec<FiniteGroup> = [63, 21, 7].iter().map(|&o| (*cyclic_group(&fs, o)).clone()).collect();
    Ok(build_alphabet_partition(&alphabet, &series)?)
}

/// One 15-orbit of `G_2(4,2)` under `⟨α⟩ > ⟨α^3⟩ > {e}`.
pub fn toy_tree() -> Result<PartitionTree, Box<dyn Error>> {
    let fs = gf16();
    let all: Vec<Subspace> = enumerate_grassmannian(fs.base().clone(), 4, 2)?.collect();
    let g = cyclic_group(&fs, 15);
    let alphabet = orbits(&g, &all)?.into_iter().find(|o| o.len() == 15).ok_or("no 15-orbit")?;
    let series: Vec<FiniteGroup> = [15, 5, 1].iter().map(|&o| (*cyclic_group(&fs, o)).clone()).collect();
    Ok(build_alphabet_partition(&alphabet, &series)?)
}

fn cyclic_code() -> Outcome {
    let fs = gf64();
    let code = generate_orbit(&cyclic_group(&fs, 63), &field_subspace(&fs, &CYCLIC_63))?;
    let p = code.parameters();
    let exhaustive = code.min_distance_exhaustive()?;
    let ok = (p.n, p.m, p.d, p.k) == (6, 63, Some(4), 3) && exhaustive == 4;
    Ok((ok, format!("(n,M,d,k) = ({},{},{:?},{}), exhaustive d = {exhaustive}", p.n, p.m, p.d, p.k)))
}

fn ternary_unipotent() -> Outcome {
    let f3 = BaseField::prime(3)?;
    let rm = build_rank_metric_code(f3, 3, &ternary_rank_code_generators())?;
    let brute = rm.codewords().iter().filter(|c| !c.is_zero()).map(MatrixFq::rank).min();
    let code = construct_code(&ternary_layout(), &rm)?;
    let p = code.parameters();
    let ok = rm.len() == 729
        && brute == Some(2)
        && (p.n, p.m, p.d, p.k) == (6, 729, Some(4), 3)
        && code.stabilizer().order() == 1;
    Ok((
        ok,
        format!(
            "|C| = {}, d_R = {:?}, orbit code ({},{},{:?},{}), stabilizer order {}",
            rm.len(),
            brute,
            p.n,
            p.m,
            p.d,
            p.k,
            code.stabilizer().order()
        ),
    ))
}

fn random_matrix(field: &Arc<BaseField>, r: usize, c: usize, rng: &mut impl Rng) -> Result<MatrixFq, Box<dyn Error>> {
    let q = field.order() as u16;
    Ok(MatrixFq::new(field.clone(), r, c, (0..r * c).map(|_| rng.gen_range(0..q)).collect())?)
}

fn all_matrices(field: &Arc<BaseField>, r: usize) -> Result<Vec<MatrixFq>, Box<dyn Error>> {
    let q = field.order() as usize;
    let total = q.pow((r * r) as u32);
    (0..total)
        .map(|mut x| {
            let data = (0..r * r)
                .map(|_| {
                    let d = (x % q) as u16;
                    x /= q;
                    d
                })
                .collect();
            Ok(MatrixFq::new(field.clone(), r, r, data)?)
        })
        .collect()
}

fn special_layout_distances() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    let mut violations = 0;
    for q in [2u32, 3] {
        let field = BaseField::prime(q)?;
        for r in [2usize, 3] {
            let a = random_matrix(&field, r, r, &mut rng)?;
            let layout = BlockSubspaceLayout::special(&a)?;
            let v = layout.subspace();
            let amb = Ambient::vector(field.clone(), 2 * r);
            let hs = if (q as u64).pow((r * r) as u32) <= 729 {
                all_matrices(&field, r)?
            } else {
                (0..500).map(|_| random_matrix(&field, r, r, &mut rng)).collect::<Result<_, _>>()?
            };
            for h in hs {
                let w = amb.act(&GroupElement::Unipotent(h.clone()), &v)?;
                if v.dist(&w) != 2 * h.rank() as u32 {
                    violations += 1;
                }
                checked += 1;
            }
        }
    }
    Ok((violations == 0, format!("{checked} matrices H, {violations} violations")))
}

fn general_layout_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut violations = 0;
    let mut checked = 0;
    for q in [2u32, 3] {
        let field = BaseField::prime(q)?;
        let mut done = 0;
        while done < 200 {
            let r = rng.gen_range(1..4);
            let k = rng.gen_range(1..=2 * r);
            let m = random_matrix(&field, k, 2 * r, &mut rng)?;
            let Ok(layout) = BlockSubspaceLayout::new(m, rng.gen_range(0..=k)) else {
                continue;
            };
            let h = random_matrix(&field, r, r, &mut rng)?;
            let v = layout.subspace();
            let w = Ambient::vector(field.clone(), 2 * r).act(&GroupElement::Unipotent(h.clone()), &v)?;
            if v.dist(&w) > distance_bound(&layout, &h)? {
                violations += 1;
            }
            done += 1;
            checked += 1;
        }
    }
    Ok((violations == 0, format!("{checked} random layouts, {violations} violations")))
}

fn all_pairs(words: &[Subspace]) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            out.insert(a.dist(b));
        }
    }
    out
}

fn spreads() -> Outcome {
    let s6 = spread_code(gf64(), 3)?;
    let s4 = spread_code(gf16(), 2)?;
    let d6 = all_pairs(s6.codewords());
    let d4 = all_pairs(s4.codewords());
    let ok = s6.len() == 9 && d6 == BTreeSet::from([6]) && s4.len() == 5 && d4 == BTreeSet::from([4]);
    Ok((ok, format!("(2,6,3): {} words, distances {d6:?}; (2,4,2): {} words, distances {d4:?}", s6.len(), s4.len())))
}

fn subcode_profile() -> Outcome {
    let fs = gf64();
    let code = generate_orbit(&cyclic_group(&fs, 21), &field_subspace(&fs, &PROFILE_V))?;
    let h = cyclic_group(&fs, 7);
    let p = partition(&code, &h)?;
    let want = DistanceMultiset::from_pairs(&[(2, 7), (4, 14), (6, 28)]);
    let mut ok = true;
    let mut shown = Vec::new();
    for e in [3, 6] {
        let g = GroupElement::FieldScalar(e);
        let moved = code.group().act(&g, code.initial())?;
        let j = p.subcode_of(&moved).ok_or("missing subcode")?;
        let direct = interdistance(&p.subcodes()[0].codewords, &p.subcodes()[j].codewords)?;
        let poly = p.profile_polynomial(&g, 0)?;
        ok &= direct == want && poly == want;
        shown.push(format!("α^{e}: {poly}"));
    }
    let mut pairs = 0;
    for i in 0..p.t() {
        for s in p.subcodes() {
            let inv = code.group().inverse(&s.representative)?;
            ok &= p.profile_polynomial(&s.representative, i)? == p.profile_polynomial(&inv, i)?;
            pairs += 1;
        }
    }
    Ok((ok, format!("{}; symmetry over {pairs} coset pairs", shown.join(", "))))
}

fn reduced_equals_exhaustive() -> Outcome {
    let mut mismatches = 0;
    let mut checked = 0;
    let fs = gf64();
    let g = cyclic_group(&fs, 63);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut vs = Vec::new();
    while vs.len() < 20 {
        let m = random_matrix(fs.base(), 3, 6, &mut rng)?;
        if m.rank() == 3 {
            vs.push(Subspace::from_matrix(&m)?);
        }
    }
    for v in &vs {
        let code = generate_orbit(&g, v)?;
        let truth = code.min_distance_exhaustive()?;
        for d in [1, 3, 7, 9, 21, 63] {
            checked += 1;
            if fast_min_distance(&code, &cyclic_group(&fs, d))?.min_distance != truth {
                mismatches += 1;
            }
        }
    }
    let fs4 = gf16();
    let g4 = cyclic_group(&fs4, 15);
    for v in enumerate_grassmannian(fs4.base().clone(), 4, 2)? {
        let code = generate_orbit(&g4, &v)?;
        if code.len() < 2 {
            continue;
        }
        let truth = code.min_distance_exhaustive()?;
        for d in [1, 3, 5, 15] {
            checked += 1;
            if fast_min_distance(&code, &cyclic_group(&fs4, d))?.min_distance != truth {
                mismatches += 1;
            }
        }
    }
    Ok((mismatches == 0, format!("{checked} (code, subgroup) cases, {mismatches} mismatches")))
}

/// Rows `D_S({V}, C_H(α^i V))` for `i = 1..4`, in the order `α^{i+9j}`.
pub fn reduced_rows(code: &OrbitCode) -> Result<Vec<Vec<u32>>, Box<dyn Error>> {
    let v = code.initial();
    (1..=4u32)
        .map(|i| {
            (0..7u32)
                .map(|j| Ok(v.dist(&code.group().act(&GroupElement::FieldScalar(i + 9 * j), v)?)))
                .collect()
        })
        .collect()
}

fn reduced_search() -> Outcome {
    let fs = gf64();
    let code = generate_orbit(&cyclic_group(&fs, 63), &field_subspace(&fs, &REDUCED_V))?;
    let r = fast_min_distance(&code, &cyclic_group(&fs, 7))?;
    let rows = reduced_rows(&code)?;
    let rows_ok = rows.iter().all(|row| row.iter().all(|d| *d == 4 || *d == 6) && row.iter().min() == Some(&4));
    let differing: Vec<usize> = rows
        .iter()
        .zip(REDUCED_TABLE)
        .enumerate()
        .filter(|(_, (a, b))| a.iter().copied().collect::<DistanceMultiset>() != b.iter().copied().collect::<DistanceMultiset>())
        .map(|(i, _)| i + 1)
        .collect();
    let ok = r.computations == 28 && r.min_distance == 4 && rows_ok;
    Ok((
        ok,
        format!(
            "{} distances over {:?}, minimum {}; rows in {{4,6}} with minimum 4: {rows_ok}; rows differing from the reference multisets: {differing:?}",
            r.computations, r.representatives, r.min_distance
        ),
    ))
}

fn alphabet_tree() -> Outcome {
    let fs = gf64();
    let tree = alphabet_tree_gf64()?;
    let lv1 = &tree.levels()[1];
    let sizes: BTreeSet<usize> = lv1.nodes.iter().map(|n| n.members.len()).collect();
    let mut ok = tree.alphabet().len() == 1386 && lv1.nodes.len() == 22 && sizes == BTreeSet::from([63]);
    let semi = FiniteGroup::generate(
        Ambient::field(fs.clone()),
        &[GroupElement::Semilinear(1, 0), GroupElement::Semilinear(0, 1)],
        DEFAULT_GROUP_CAP,
    )?;
    let orbs = orbits(&semi, tree.alphabet())?;
    let mut orbit_sizes: Vec<usize> = orbs.iter().map(Vec::len).collect();
    orbit_sizes.sort_unstable();
    ok &= orbit_sizes == vec![126, 126, 189, 189, 378, 378];
    for (exps, size) in SEMIDIRECT_REPS {
        let v = field_subspace(&fs, &exps);
        ok &= orbs.iter().any(|o| o.len() == size && o.binary_search(&v).is_ok());
    }
    let mut counts = Vec::new();
    for (l, want) in TREE_COUNTS.iter().enumerate() {
        let d = tree.intrasubset_distance(l + 1)?;
        ok &= (d.fast_computations, d.naive_computations) == *want;
        counts.push(format!("Γ_{}: {}/{}", l + 1, d.fast_computations, d.naive_computations));
    }
    Ok((
        ok,
        format!(
            "|S| = {}, {} orbits of {:?}, semidirect orbits {orbit_sizes:?}, {}",
            tree.alphabet().len(),
            lv1.nodes.len(),
            sizes,
            counts.join(", ")
        ),
    ))
}

fn grassmannian_sizes() -> Outcome {
    let f2 = BaseField::prime(2)?;
    let a = enumerate_grassmannian(f2.clone(), 4, 2)?.count();
    let b = enumerate_grassmannian(f2, 6, 3)?.count();
    let ok = a == 35 && b == 1395 && gaussian_binomial(4, 2, 2)? == 35 && gaussian_binomial(6, 3, 2)? == 1395;
    Ok((ok, format!("|G_2(4,2)| = {a}, |G_2(6,3)| = {b}")))
}

/// The Voronoi region of `V_1` under the `ExcludeSelf` reading, compared with the reference listing.
pub fn voronoi_listing_diagnostic() -> Result<(bool, String), Box<dyn Error>> {
    let fs = gf16();
    let g = cyclic_group(&fs, 15);
    let ambient: Vec<Subspace> = enumerate_grassmannian(fs.base().clone(), 4, 2)?.collect();
    let vs: Vec<Subspace> = VORONOI_V.iter().map(|e| field_subspace(&fs, e)).collect();
    let code = generate_orbit(&g, &vs[0])?;
    let listed: BTreeSet<Subspace> = VORONOI_LISTING
        .iter()
        .map(|&(o, e)| g.act(&GroupElement::FieldScalar(e), &vs[o]))
        .collect::<Result<_, _>>()?;
    let literal: BTreeSet<Subspace> = code.voronoi_region(&ambient, &vs[0], VoronoiMode::Literal)?.into_iter().collect();
    let alt: BTreeSet<Subspace> = code.voronoi_region(&ambient, &vs[0], VoronoiMode::ExcludeSelf)?.into_iter().collect();
    Ok((
        alt == listed,
        format!(
            "reference {} elements; literal region {} (overlap {}); exclude-self region {} (overlap {})",
            listed.len(),
            literal.len(),
            literal.intersection(&listed).count(),
            alt.len(),
            alt.intersection(&listed).count()
        ),
    ))
}

fn voronoi_symmetry() -> Outcome {
    let fs = gf16();
    let g = cyclic_group(&fs, 15);
    let ambient: Vec<Subspace> = enumerate_grassmannian(fs.base().clone(), 4, 2)?.collect();
    let v1 = field_subspace(&fs, &VORONOI_V[0]);
    let code = generate_orbit(&g, &v1)?;
    let sym = GroupElement::FieldScalar(11);
    let region = code.voronoi_region(&ambient, &v1, VoronoiMode::Literal)?;
    let moved: BTreeSet<Subspace> = region.iter().map(|x| g.act(&sym, x)).collect::<Result<_, _>>()?;
    let target: BTreeSet<Subspace> = code
        .voronoi_region(&ambient, &g.act(&sym, &v1)?, VoronoiMode::Literal)?
        .into_iter()
        .collect();
    let (_, diag) = voronoi_listing_diagnostic()?;
    Ok((
        moved == target,
        format!("|R_V(V_1)| = {}, image equals R_V(α^11 V_1): {}; diagnostic: {diag}", region.len(), moved == target),
    ))
}

fn multishot_assemblies() -> Outcome {
    let tree = toy_tree()?;
    let mut assembled = 0;
    let mut violations = 0;
    for d in [2u32, 4, 6, 8] {
        let lp = tree.first_level_reaching(d)?;
        for m in 1..=3usize {
            for k in 0..2usize.pow(lp as u32) {
                let comps = (1..=lp)
                    .map(|l| {
                        let p = tree.branching(l).ok_or("not nested")?;
                        let c = if (k >> (l - 1)) & 1 == 0 {
                            ComponentCode::full(p, m)?
                        } else {
                            ComponentCode::repetition(p, m)?
                        };
                        Ok(c)
                    })
                    .collect::<Result<Vec<_>, Box<dyn Error>>>()?;
                if !validate_component_codes(&tree, &comps, d)?.valid {
                    continue;
                }
                let code = assemble(&tree, &comps, d)?;
                assembled += 1;
                if code.min_extended_distance()?.is_some_and(|md| md < d) {
                    violations += 1;
                }
            }
        }
    }
    Ok((
        violations == 0 && assembled > 0,
        format!("{assembled} valid assemblies checked exhaustively, {violations} violations"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_configurations_build() {
        assert_eq!(ternary_rank_code_generators().len(), 6);
        assert!(ternary_layout().is_special());
        assert_eq!(spread_complement(&gf16(), 2).unwrap().len(), 30);
        assert_eq!(toy_tree().unwrap().depth(), 3);
        let fs = gf64();
        for e in [CYCLIC_63, PROFILE_V, REDUCED_V].iter().chain(SEMIDIRECT_REPS.iter().map(|(e, _)| e)) {
            let v = field_subspace(&fs, e);
            assert_eq!(v.dim(), 3);
            assert_eq!(v.field_exponents(&fs), e.to_vec());
        }
    }

    #[test]
    fn unknown_criterion() {
        assert!(run(13).is_none());
    }

    #[test]
    #[ignore]
    fn print_all() {
        for r in run_all() {
            println!("{r}");
        }
    }
}
