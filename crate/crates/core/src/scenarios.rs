//! Built-in regression scenarios: worked examples with their expected outcomes.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::construction::{
    check_theorem_conditions, decompose_bracket, enumerate_bilinear_pairings, induce_bracket,
    section_independence_check, sigma_gamma_commute_check, Action, ConstructionData, GammaMap,
    PairingConstraints, PairingMap,
};
use crate::group::{
    identify_small_group, make_cyclic, make_dihedral, make_direct, make_quaternion, Elem, GroupRef,
    DEFAULT_ORDER_BOUND,
};
use crate::mla::{
    bracket_isotopic, commutator_bracket, derived_subalgebra, end_mla, trivial_bracket, verify_mla,
    LieBracket,
};
use crate::search::{
    enumerate_brackets, enumerate_gamma, enumerate_induced, enumerate_mla_homs, tau,
    verify_coprime_determination, SearchConfig,
};

/// One compared quantity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

fn check(label: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Check {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    Check {
        label: label.into(),
        pass: expected == actual,
        expected,
        actual,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScenarioOutcome {
    pub name: String,
    pub checks: Vec<Check>,
    pub error: Option<String>,
}

impl ScenarioOutcome {
    pub fn pass(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.pass)
    }
}

pub struct Scenario {
    pub name: &'static str,
    pub description: &'static str,
    run: fn(&SearchConfig) -> Result<Vec<Check>, String>,
}

impl Scenario {
    pub fn run(&self, config: &SearchConfig) -> ScenarioOutcome {
        match (self.run)(config) {
            Ok(checks) => ScenarioOutcome {
                name: self.name.into(),
                checks,
                error: None,
            },
            Err(e) => ScenarioOutcome {
                name: self.name.into(),
                checks: Vec::new(),
                error: Some(e),
            },
        }
    }
}

pub fn catalog() -> Vec<Scenario> {
    vec![
        Scenario {
            name: "s3",
            description: "S3 as Z3 : Z2 with the inversion action: structures, Gamma families, induce/decompose",
            run: s3,
        },
        Scenario {
            name: "z3xd3",
            description: "Z3 x D3: brackets with Z3 as an ideal",
            run: z3xd3,
        },
        Scenario {
            name: "z5xd3",
            description: "Z5 x D3, coprime orders: tau(3) structures, all pairings trivial",
            run: z5xd3,
        },
        Scenario {
            name: "z5xq8",
            description: "Z5 x Q8 and Z5 x S3, coprime orders: induced class counts",
            run: z5xq8,
        },
        Scenario {
            name: "coprime-small",
            description: "Z3 x Z2 and Z5 x Z2: every bracket is determined by the construction",
            run: coprime_small,
        },
        Scenario {
            name: "dihedral-quaternion",
            description: "class counts on D3, D4, Q8 against tau(n)",
            run: dihedral_quaternion,
        },
        Scenario {
            name: "z4xd4",
            description: "Z4 x D4: Gamma homomorphisms, bilinear maps, Cases I-III and derived subalgebras",
            run: z4xd4,
        },
        Scenario {
            name: "end",
            description: "End(H) with pointwise product and the composition bracket",
            run: end,
        },
        Scenario {
            name: "lemma",
            description: "sigma and Gamma commute for abelian K on accepted data",
            run: lemma,
        },
        Scenario {
            name: "sections",
            description: "sigma and Gamma do not depend on the section (S3, Z4 x D4 Case II)",
            run: sections,
        },
    ]
}

/// Scenarios whose name starts with `only` (all when `None`).
pub fn select(only: Option<&str>) -> Vec<Scenario> {
    catalog()
        .into_iter()
        .filter(|s| only.is_none_or(|o| s.name.starts_with(o)))
        .collect()
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn cyclic(n: usize) -> GroupRef {
    Arc::new(make_cyclic(n))
}

fn dihedral(n: usize) -> GroupRef {
    Arc::new(make_dihedral(n))
}

fn label(b: &LieBracket) -> Result<String, String> {
    identify_small_group(&Arc::new(derived_subalgebra(b).to_group())).map_err(err)
}

fn labels<'a>(brackets: impl Iterator<Item = &'a LieBracket>) -> Result<String, String> {
    let set: BTreeSet<String> = brackets.map(label).collect::<Result<_, _>>()?;
    Ok(set.into_iter().collect::<Vec<_>>().join(","))
}

/// `H = Z3`, `K = Z2`, `σ` = inversion.
pub fn s3_action() -> Action {
    Action::inversion_by_parity(&cyclic(3), &cyclic(2), &[true]).expect("inversion is an action")
}

/// The S3 data with `Γ_g` = inversion and trivial `β`.
pub fn s3_data() -> ConstructionData {
    let sigma = s3_action();
    let (h, k) = (sigma.h().clone(), sigma.k().clone());
    let gamma = GammaMap::new(h.clone(), k.clone(), vec![vec![0, 0, 0], vec![0, 2, 1]])
        .expect("endomorphisms");
    ConstructionData::new(
        sigma,
        trivial_bracket(&k),
        gamma,
        PairingMap::trivial(&h, &k),
    )
    .expect("consistent data")
}

fn s3(config: &SearchConfig) -> Result<Vec<Check>, String> {
    let mut out = Vec::new();
    let d3 = dihedral(3);
    let cfg = SearchConfig {
        up_to_iso: true,
        ..config.clone()
    };
    out.push(check(
        "structures on S3 (classes)",
        2,
        enumerate_brackets(&d3, &cfg).map_err(err)?.class_count,
    ));

    let sigma = s3_action();
    let k = sigma.k().clone();
    let gammas = enumerate_gamma(&sigma, Some(&trivial_bracket(&k))).map_err(err)?;
    // Γ_g = multiplication by 0, 1 or 2 all satisfy the identities.
    out.push(check(
        "Gamma families passing the identities (raw)",
        3,
        gammas.len(),
    ));
    let nonzero: Vec<LieBracket> = gammas
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let data = ConstructionData::new(
                sigma.clone(),
                trivial_bracket(&k),
                g.clone(),
                PairingMap::trivial(sigma.h(), &k),
            )
            .map_err(err)?;
            induce_bracket(&data).map_err(err)
        })
        .collect::<Result<_, _>>()?;
    let iso = SearchConfig {
        automorphism_bound: DEFAULT_ORDER_BOUND,
        ..SearchConfig::default()
    };
    let classes = crate::search::classify_brackets(&nonzero, &iso).map_err(err)?;
    out.push(check(
        "nonzero Gamma families up to bracket equivalence",
        1,
        classes,
    ));

    let data = s3_data();
    let bracket = induce_bracket(&data).map_err(err)?;
    let violations = verify_mla(bracket.group(), &bracket.rows()).map_err(err)?;
    out.push(check(
        "induced bracket axiom violations",
        0,
        violations.len(),
    ));
    let commutator = commutator_bracket(bracket.group());
    let equivalent = bracket_isotopic(&bracket, &commutator, DEFAULT_ORDER_BOUND).map_err(err)?;
    out.push(check(
        "equivalent to the commutator bracket",
        true,
        equivalent.is_some(),
    ));
    out.push(check("derived subalgebra", "Z3", label(&bracket)?));
    let back = decompose_bracket(&sigma, &bracket).map_err(err)?;
    let same = back.gamma() == data.gamma()
        && back.beta() == data.beta()
        && back.star_k() == data.star_k();
    out.push(check("decompose recovers the data", true, same));
    Ok(out)
}

fn induced_classes(h: usize, k: GroupRef, config: &SearchConfig) -> Result<Vec<Check>, String> {
    let sigma = Action::trivial(&cyclic(h), &k);
    let r = enumerate_induced(&sigma, config).map_err(err)?;
    let name = format!("Z{h}x{}", k.name());
    let all_ideal = r.items.iter().all(|b| {
        let g = b.bracket.group();
        let hs = crate::group::subgroup_generated(g, &(0..h).collect::<Vec<Elem>>());
        crate::mla::is_ideal(&b.bracket, &hs)
    });
    Ok(vec![
        check(format!("{name}: classes with Z{h} ideal"), 2, r.class_count),
        check(
            format!("{name}: Z{h} is an ideal of every induced bracket"),
            true,
            all_ideal,
        ),
        check(
            format!("{name}: all pairing maps trivial"),
            true,
            r.items.iter().all(|b| b.data.beta().is_trivial()),
        ),
        check(format!("{name}: search completed"), true, r.exhausted),
    ])
}

fn z3xd3(config: &SearchConfig) -> Result<Vec<Check>, String> {
    induced_classes(3, dihedral(3), config)
}

fn z5xd3(config: &SearchConfig) -> Result<Vec<Check>, String> {
    let mut out = induced_classes(5, dihedral(3), config)?;
    out.push(check("tau(3)", 2, tau(3)));
    Ok(out)
}

fn z5xq8(config: &SearchConfig) -> Result<Vec<Check>, String> {
    let mut out = Vec::new();
    for (k, n) in [
        (Arc::new(make_quaternion(2)) as GroupRef, 2),
        (dihedral(3), 3),
    ] {
        let sigma = Action::trivial(&cyclic(5), &k);
        let r = verify_coprime_determination(&sigma, config).map_err(err)?;
        let name = format!("Z5x{}", k.name());
        out.push(check(
            format!("{name}: induced classes = tau({n})"),
            tau(n),
            r.induced_class_count,
        ));
        out.push(check(
            format!("{name}: pairing maps trivial"),
            true,
            r.induced_pairing_trivial,
        ));
        out.push(check(
            format!("{name}: full enumeration skipped"),
            true,
            r.brackets_checked.is_none(),
        ));
    }
    Ok(out)
}

fn coprime_small(config: &SearchConfig) -> Result<Vec<Check>, String> {
    let mut out = Vec::new();
    for h in [3, 5] {
        let sigma = Action::trivial(&cyclic(h), &cyclic(2));
        let r = verify_coprime_determination(&sigma, config).map_err(err)?;
        let full = r
            .full_class_count
            .map_or("skipped".to_string(), |c| c.to_string());
        out.push(check(format!("Z{h}xZ2: structures"), 1, full));
        out.push(check(
            format!("Z{h}xZ2: determined by the construction"),
            true,
            r.consistent,
        ));
    }
    Ok(out)
}

fn dihedral_quaternion(config: &SearchConfig) -> Result<Vec<Check>, String> {
    let cfg = SearchConfig {
        up_to_iso: true,
        ..config.clone()
    };
    let mut out = Vec::new();
    let groups: [(GroupRef, u64); 3] = [
        (dihedral(3), 3),
        (dihedral(4), 4),
        (Arc::new(make_quaternion(2)), 2),
    ];
    for (g, n) in groups {
        let r = enumerate_brackets(&g, &cfg).map_err(err)?;
        out.push(check(
            format!("{}: classes = tau({n})", g.name()),
            tau(n),
            r.class_count,
        ));
    }
    Ok(out)
}

/// `a ⋆ b` for the generators `a = 4`, `b = 1` of D4, as a power of `b`.
fn d4_bracket_with(ab: Elem, config: &SearchConfig) -> Result<LieBracket, String> {
    let d4 = dihedral(4);
    let all = enumerate_brackets(
        &d4,
        &SearchConfig {
            up_to_iso: false,
            ..config.clone()
        },
    )
    .map_err(err)?;
    all.items
        .into_iter()
        .find(|b| b.star(4, 1) == ab)
        .ok_or_else(|| format!("no bracket on D4 with a*b = {ab}"))
}

/// Z4 x D4 Case II data: `a ⋆ b = b`, `Γ_a = 2̃`, `Γ_b = 0̃`, trivial `β`.
pub fn z4xd4_case2(config: &SearchConfig) -> Result<ConstructionData, String> {
    let (h, k) = (cyclic(4), dihedral(4));
    let star = d4_bracket_with(1, config)?;
    let sigma = Action::trivial(&h, &k);
    let gamma = enumerate_gamma(&sigma, Some(&star))
        .map_err(err)?
        .into_iter()
        .find(|g| g.table(4)[1] == 2 && g.table(1)[1] == 0)
        .ok_or("Case II Gamma missing")?;
    ConstructionData::new(sigma, star, gamma, PairingMap::trivial(&h, &k)).map_err(err)
}

fn z4xd4(config: &SearchConfig) -> Result<Vec<Check>, String> {
    let (h, k) = (cyclic(4), dihedral(4));
    let sigma = Action::trivial(&h, &k);
    let mut out = Vec::new();
    out.push(check(
        "group homomorphisms D4 -> End(Z4)",
        4,
        enumerate_gamma(&sigma, None).map_err(err)?.len(),
    ));
    let constraints = PairingConstraints {
        alternating: true,
        conj_invariant: true,
    };
    out.push(check(
        "bilinear pairing maps",
        2,
        enumerate_bilinear_pairings(&k, &h, constraints).len(),
    ));

    let induced = enumerate_induced(&sigma, config).map_err(err)?;
    out.push(check("search completed", true, induced.exhausted));
    let cases = [
        ("I", 0, 4, "Z2"),
        ("II", 1, 2, "Z2xZ4,Z4"),
        ("III", 2, 4, "Z2,Z2xZ2"),
    ];
    for (case, ab, homs, expected) in cases {
        let star = d4_bracket_with(ab, config)?;
        let found = enumerate_mla_homs(&k, &star, &h).map_err(err)?.len();
        out.push(check(
            format!("Case {case}: MLA homomorphisms"),
            homs,
            found,
        ));
        let of_case = induced.items.iter().filter(|b| b.data.star_k() == &star);
        let brackets: Vec<&LieBracket> = of_case
            .map(|b| &b.bracket)
            .filter(|b| ab != 0 || !b.is_trivial())
            .collect();
        out.push(check(
            format!("Case {case}: induced brackets"),
            true,
            !brackets.is_empty(),
        ));
        out.push(check(
            format!("Case {case}: derived subalgebras"),
            expected,
            labels(brackets.into_iter())?,
        ));
    }
    let data = z4xd4_case2(config)?;
    let report = check_theorem_conditions(&data);
    out.push(check(
        "Case II data (Gamma_a = 2, Gamma_b = 0) accepted",
        true,
        report.all_pass(),
    ));
    let b = induce_bracket(&data).map_err(err)?;
    out.push(check(
        "Case II data: derived subalgebra",
        "Z2xZ4",
        label(&b)?,
    ));
    Ok(out)
}

fn end(_: &SearchConfig) -> Result<Vec<Check>, String> {
    let groups: Vec<GroupRef> = vec![
        cyclic(2),
        cyclic(3),
        cyclic(4),
        Arc::new(make_direct(&make_cyclic(2), &make_cyclic(2))),
        cyclic(6),
    ];
    let mut out = Vec::new();
    for h in groups {
        let e = end_mla(&h).map_err(err)?;
        let violations = verify_mla(&e.group, &e.bracket.rows()).map_err(err)?;
        out.push(check(
            format!("End({}) axiom violations", h.name()),
            0,
            violations.len(),
        ));
    }
    Ok(out)
}

/// `(H, K, σ)` with abelian `K` used for the commutation property.
pub fn lemma_catalog() -> Vec<Action> {
    let v4: GroupRef = Arc::new(make_direct(&make_cyclic(2), &make_cyclic(2)));
    let mut out = Vec::new();
    for h in [cyclic(3), cyclic(4), cyclic(5), v4.clone()] {
        for k in [cyclic(2), cyclic(4)] {
            out.push(Action::trivial(&h, &k));
            out.push(Action::inversion_by_parity(&h, &k, &[true]).expect("inversion"));
        }
    }
    let swap = vec![0, 2, 1, 3];
    out.push(
        Action::from_generator_images(&v4, &cyclic(2), std::slice::from_ref(&swap)).expect("swap"),
    );
    out.push(Action::from_generator_images(&v4, &cyclic(4), &[swap]).expect("swap"));
    out
}

/// `Γ` occurring in some accepted tuple for `σ`, over all brackets on `K`.
pub fn accepted_gammas(sigma: &Action, config: &SearchConfig) -> Result<Vec<GammaMap>, String> {
    let r = enumerate_induced(sigma, config).map_err(err)?;
    let mut out: Vec<GammaMap> = Vec::new();
    for b in r.items {
        if !out.contains(b.data.gamma()) {
            out.push(b.data.gamma().clone());
        }
    }
    Ok(out)
}

fn lemma(config: &SearchConfig) -> Result<Vec<Check>, String> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for sigma in lemma_catalog() {
        for gamma in accepted_gammas(&sigma, config)? {
            cases += 1;
            if !sigma_gamma_commute_check(&sigma, &gamma).map_err(err)? {
                failures.push((sigma.clone(), gamma));
            }
        }
    }
    Ok(vec![
        check(
            "accepted (sigma, Gamma) pairs examined > 0",
            true,
            cases > 0,
        ),
        check(
            "accepted pairs where sigma and Gamma fail to commute",
            0,
            failures.len(),
        ),
    ])
}

fn sections(config: &SearchConfig) -> Result<Vec<Check>, String> {
    let mut out = Vec::new();
    let data = s3_data();
    let b = induce_bracket(&data).map_err(err)?;
    let r = section_independence_check(data.sigma(), &b).map_err(err)?;
    out.push(check("S3: sections checked", 3, r.sections_checked));
    out.push(check("S3: independent", true, r.independent));
    let data = z4xd4_case2(config)?;
    let b = induce_bracket(&data).map_err(err)?;
    let r = section_independence_check(data.sigma(), &b).map_err(err)?;
    out.push(check(
        "Z4xD4 Case II: sections checked",
        4usize.pow(7),
        r.sections_checked,
    ));
    out.push(check("Z4xD4 Case II: independent", true, r.independent));
    Ok(out)
}
