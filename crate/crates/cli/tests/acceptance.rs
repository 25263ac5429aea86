//! Acceptance checks. Each criterion prints one `PASS`/`FAIL` line with its
//! runtime; the process exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;

use orbikit::exactnum::{rat, Cyclotomic, Rational};
use orbikit::grouprep::dual_pairing_matrix;
use orbikit::hatk_point::{a_map, torus_equal};
use orbikit::localize::{separating_witness, survives};
use orbikit::mtorus::{mapping_torus_class, mapping_torus_from_automorphism, EigenLine, EigenSector, HolonomyData, Turn};
use orbikit::wproj::{h0, h0_bruteforce, h1, index, mv_generators, nondegeneracy_check, CohomologyRules, EquivLineBundle};
use orbikit::{ClassFunction, FiniteAbelianGroup, GroupElement, RepRingElement};
use orbk::{evaluate, reproduce, Context};

type Check = Result<String, String>;

/// Name, check, and runtime budget when one is stated.
type Criterion = (&'static str, fn() -> Check, Option<Duration>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn groups_up_to(n: u64) -> Vec<FiniteAbelianGroup> {
    (1..=n).flat_map(FiniteAbelianGroup::all_of_order).collect()
}

fn small_groups() -> Vec<FiniteAbelianGroup> {
    [vec![2], vec![3], vec![4], vec![2, 2]].into_iter().map(|o| FiniteAbelianGroup::new(o).unwrap()).collect()
}

fn random_virtual(rng: &mut StdRng, g: &FiniteAbelianGroup) -> RepRingElement {
    let terms: Vec<(Vec<i64>, i64)> =
        g.irreps().iter().map(|pi| (pi.labels().iter().map(|&l| l as i64).collect(), rng.gen_range(-5..=5))).collect();
    RepRingElement::from_terms(g, terms.iter().map(|(l, n)| (l.as_slice(), *n))).unwrap()
}

fn random_rational(rng: &mut StdRng) -> Rational {
    rat(rng.gen_range(-12..=12), rng.gen_range(1..=7))
}

fn random_classfun(rng: &mut StdRng, g: &FiniteAbelianGroup) -> ClassFunction {
    ClassFunction::from_fn(g, |_| {
        let e = g.exponent();
        Cyclotomic::root_of_unity(e, rng.gen_range(0..e as i64)).unwrap().scale(&random_rational(rng))
    })
}

fn criterion_1() -> Check {
    let out = evaluate(["orbk", "cp1", "pairing-matrix", "--k", "2"], &Context::default())?;
    let expected = json!({
        "basis": [[0, 0], [0, -2], [-1, 0], [0, -1]],
        "det": -1,
        "matrix": {
            "rows": 4,
            "cols": 4,
            "entries": [[1, 0, 0, 0], [0, -1, -1, -1], [0, -1, 0, -1], [0, -1, -1, 0]]
        }
    });
    for key in ["basis", "det", "matrix"] {
        ensure(out[key] == expected[key], || format!("{key}: got {}, expected {}", out[key], expected[key]))?;
    }
    Ok("4x4 matrix entry-exact, det -1".into())
}

fn criterion_2() -> Check {
    let mut rng = StdRng::seed_from_u64(2);
    for g in small_groups() {
        for _ in 0..200 {
            let x = random_virtual(&mut rng, &g);
            ensure(a_map(&x.ch()).map_err(|e| e.to_string())?.is_zero(), || format!("a(ch({x})) != 0 over {g}"))?;
        }
        for _ in 0..200 {
            let f = random_classfun(&mut rng, &g);
            let shifted = f.add(&random_virtual(&mut rng, &g).ch()).unwrap();
            let a = a_map(&f).unwrap();
            ensure(torus_equal(&a, &a_map(&shifted).unwrap()).unwrap(), || format!("lattice shift not identified over {g}"))?;
            let pi = &g.irreps()[rng.gen_range(0..g.order())];
            let m = rng.gen_range(2..=6);
            let off = shifted.add(&RepRingElement::from_irrep(pi).ch().scale(&Cyclotomic::from_rational(rat(1, m))).unwrap()).unwrap();
            ensure(!torus_equal(&a, &a_map(&off).unwrap()).unwrap(), || format!("non-lattice shift identified over {g}"))?;
        }
    }
    Ok("4 groups x 200 characters, 200 shifts".into())
}

fn criterion_3() -> Check {
    let mut cases = 0;
    for g in groups_up_to(24) {
        for emb in g.subgroups() {
            let h = emb.domain();
            let in_h: Vec<bool> = {
                let mut v = vec![false; g.order()];
                for i in emb.image_indices() {
                    v[i] = true;
                }
                v
            };
            for sigma in h.irreps() {
                let sigma_rep = RepRingElement::from_irrep(&sigma);
                let induced = emb.induce(&sigma_rep).map_err(|e| e.to_string())?;
                let lhs = induced.ch().trace();
                let rhs = sigma_rep.ch().trace();
                ensure(lhs == rhs, || format!("Tr ind {sigma} != Tr {sigma} for {h} in {g}"))?;
                // induced character of an abelian group: [G:H]·χ on H, 0 off H
                let index = Cyclotomic::from_int(emb.index() as i64);
                for (hi, &gi) in emb.image_indices().iter().enumerate() {
                    let want = sigma.value(&h.element_at(hi)).unwrap().checked_mul(&index).unwrap();
                    ensure(induced.value(&g.element_at(gi)).unwrap() == want, || format!("ind {sigma} wrong on H"))?;
                }
                for (gi, &inside) in in_h.iter().enumerate() {
                    if !inside {
                        ensure(induced.value(&g.element_at(gi)).unwrap().is_zero(), || format!("ind {sigma} nonzero off H"))?;
                    }
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (embedding, irreducible) pairs"))
}

fn criterion_4() -> Check {
    let mut cases = 0;
    for g in groups_up_to(24) {
        for emb in g.subgroups() {
            for pi in g.irreps() {
                let x = RepRingElement::from_irrep(&pi);
                let lhs = emb.average(&x.ch()).map_err(|e| e.to_string())?;
                let rhs = emb.invariants(&x).map_err(|e| e.to_string())?.ch();
                ensure(lhs == rhs, || format!("average/invariants mismatch for {pi} over {} in {g}", emb.domain()))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (embedding, irreducible) pairs"))
}

fn in_cyclic_span(h: &GroupElement, g: &GroupElement) -> bool {
    (0..h.order() as i64).any(|n| &h.multiple(n) == g)
}

fn criterion_5() -> Check {
    let mut cases = 0;
    for grp in groups_up_to(24) {
        for h in grp.elements() {
            for g in grp.elements() {
                let expected = in_cyclic_span(&h, &g);
                let s = survives(&h, &g).map_err(|e| e.to_string())?;
                ensure(s == expected, || format!("survives({h}, {g}) = {s} in {grp}"))?;
                let w = separating_witness(&h, &g).map_err(|e| e.to_string())?;
                ensure(w.is_some() != s, || format!("witness presence wrong at ({h}, {g}) in {grp}"))?;
                if let Some(x) = w {
                    let eval = |at: &GroupElement| {
                        x.terms().try_fold(Cyclotomic::zero(), |acc, (labels, n)| {
                            let labels: Vec<i64> = labels.iter().map(|&l| l as i64).collect();
                            let v = grp.irrep(&labels)?.value(at)?;
                            acc.checked_add(&v.scale(&rat(n, 1)))
                        })
                    };
                    ensure(!eval(&g).unwrap().is_zero(), || format!("witness vanishes at g = {g}"))?;
                    for y in h.cyclic_subgroup() {
                        ensure(eval(&y).unwrap().is_zero(), || format!("witness nonzero on <{h}> at {y}"))?;
                    }
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (h, g) pairs"))
}

fn criterion_6() -> Check {
    let mut cases = 0;
    for k in 1..=12u64 {
        for l in -20..=20i64 {
            for h in -20..=20i64 {
                let b = EquivLineBundle::new(k, l, h).unwrap();
                ensure(h0(&b) == h0_bruteforce(&b, 40).unwrap(), || format!("h0 != brute force at {b}, k = {k}"))?;
                let d = EquivLineBundle::new(k, -1 - l, -1 - h).unwrap();
                ensure(h1(&b) == h0(&d).dual(), || format!("Serre duality fails at {b}, k = {k}"))?;
                ensure(index(&b).dim() == l + h + 1, || format!("Riemann-Roch fails at {b}, k = {k}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} bundles"))
}

fn criterion_7() -> Check {
    let report = nondegeneracy_check(&mv_generators(2).unwrap()).map_err(|e| e.to_string())?;
    ensure(report.det == -1, || format!("det = {}", report.det))?;
    ensure(report.smith.d == orbikit::IntMatrix::identity(4), || format!("SNF = {:?}", report.smith.d))?;
    let values =
        [Cyclotomic::from_rational(rat(1, 2)), Cyclotomic::from_rational(rat(2, 7)), Cyclotomic::root_of_unity(5, 1).unwrap()];
    let mut solved = 0;
    for i in 0..4 {
        for c in &values {
            let mut target = vec![Cyclotomic::zero(); 4];
            target[i] = c.clone();
            let x = report.solve_mod_z(&target).map_err(|e| e.to_string())?.ok_or("no inverse")?;
            let ax = orbikit::wproj::apply(&report.matrix, &x).unwrap();
            for (a, t) in ax.iter().zip(&target) {
                ensure(a.checked_sub(t).unwrap().is_integer(), || format!("A·x != e_{i}·{c} mod Z"))?;
            }
            solved += 1;
        }
    }
    ensure(report.kernel_witness().is_none(), || "kernel witness found".into())?;
    Ok(format!("SNF identity, {solved} functionals solved"))
}

fn criterion_8() -> Check {
    let groups = groups_up_to(24);
    for g in &groups {
        let m = dual_pairing_matrix(g);
        ensure(m.is_permutation(), || format!("not a permutation matrix for {g}"))?;
    }
    Ok(format!("{} groups", groups.len()))
}

/// One eigenspace record `(element index, eigenvalue numerator, plus, minus)`.
type Record = (usize, i64, Vec<Rational>, Vec<Rational>);

fn build(g: &FiniteAbelianGroup, records: &[Record]) -> HolonomyData {
    let mut d = HolonomyData::new(g);
    for (i, m, p, q) in records {
        let x = g.element_at(*i);
        let o = x.order() as i64;
        let s = EigenSector::new(
            rat(m % o, o),
            p.iter().cloned().map(Turn::Exact).collect(),
            q.iter().cloned().map(Turn::Exact).collect(),
        );
        let mut one = HolonomyData::new(g);
        one.insert(&x, s).unwrap();
        d = d.direct_sum(&one).unwrap();
    }
    d
}

fn random_records(rng: &mut StdRng, g: &FiniteAbelianGroup) -> Vec<Record> {
    let turns = |rng: &mut StdRng| (0..rng.gen_range(0..3)).map(|_| random_rational(rng)).collect::<Vec<_>>();
    (0..rng.gen_range(0..6))
        .map(|_| (rng.gen_range(0..g.order()), rng.gen_range(0..12), turns(rng), turns(rng)))
        .collect()
}

fn criterion_9() -> Check {
    let mut rng = StdRng::seed_from_u64(9);
    let groups: Vec<FiniteAbelianGroup> = [2, 3, 4].into_iter().map(FiniteAbelianGroup::cyclic).collect();
    let err = |e: orbikit::Error| e.to_string();
    for n in 0..500 {
        let g = &groups[n % groups.len()];
        let labels: Vec<EigenLine> =
            (0..rng.gen_range(1..4)).map(|_| EigenLine { labels: vec![rng.gen_range(0..4)], turn: rat(0, 1) }).collect();
        let id = mapping_torus_from_automorphism(g, &labels, &labels[..rng.gen_range(0..=labels.len())]).map_err(err)?;
        ensure(id.is_zero().map_err(err)?, || format!("identity automorphism gives {}", id.class()))?;

        let (r1, r2) = (random_records(&mut rng, g), random_records(&mut rng, g));
        let (d1, d2) = (build(g, &r1), build(g, &r2));
        let c1 = mapping_torus_class(&d1).map_err(err)?;
        let sum = mapping_torus_class(&d1.direct_sum(&d2).map_err(err)?).map_err(err)?;
        let parts = c1.add(&mapping_torus_class(&d2).map_err(err)?).map_err(err)?;
        ensure(sum.equivalent(&parts).map_err(err)?, || format!("additivity fails on instance {n}"))?;

        let rev = mapping_torus_class(&d1.reversed()).map_err(err)?;
        ensure(rev.equivalent(&c1.neg().map_err(err)?).map_err(err)?, || format!("reversal fails on instance {n}"))?;

        let mut shifted = r1.clone();
        if let Some(rec) = shifted.iter_mut().find(|r| !r.2.is_empty() || !r.3.is_empty()) {
            let k = rat(rng.gen_range(-3..=3), 1);
            if let Some(t) = rec.2.first_mut() {
                *t += k;
            } else {
                rec.3[0] += k;
            }
            let c2 = mapping_torus_class(&build(g, &shifted)).map_err(err)?;
            ensure(c1.equivalent(&c2).map_err(err)?, || format!("integer branch shift changes instance {n}"))?;
        }
    }
    Ok("500 instances".into())
}

fn criterion_10() -> Check {
    let fixtures = orbk::fixtures::builtin();
    let baseline = reproduce(&fixtures, &Context::default());
    ensure(baseline.iter().all(|o| o.pass), || "goldens fail without the mutation".into())?;
    let mut results = BTreeMap::new();
    for (name, rules) in [
        ("h1 bound +1", CohomologyRules { h1_upper_shift: 1, ..CohomologyRules::STANDARD }),
        ("h1 bound -1", CohomologyRules { h1_upper_shift: -1, ..CohomologyRules::STANDARD }),
    ] {
        let failed: Vec<String> = reproduce(&fixtures, &Context { rules, approx: false })
            .into_iter()
            .filter(|o| !o.pass)
            .map(|o| o.id)
            .collect();
        ensure(!failed.is_empty(), || format!("{name}: every golden still passes"))?;
        if rules.h1_upper_shift > 0 {
            ensure(failed.iter().any(|id| id == "cp1-a22"), || format!("{name}: A_22 golden still passes"))?;
        }
        results.insert(name, failed.len());
    }
    Ok(results.iter().map(|(k, v)| format!("{k}: {v} goldens fail")).collect::<Vec<_>>().join(", "))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("k=2 pairing matrix golden", criterion_1, Some(Duration::from_secs(1))),
        ("a(ch(x)) = 0 and the torus quotient", criterion_2, Some(Duration::from_secs(5))),
        ("Frobenius reciprocity, |G| <= 24", criterion_3, Some(Duration::from_secs(30))),
        ("averaging square, |G| <= 24", criterion_4, None),
        ("localization witnesses, |G| <= 24", criterion_5, None),
        ("cohomology oracle, k <= 12, |l|,|h| <= 20", criterion_6, Some(Duration::from_secs(60))),
        ("non-degeneracy at k = 2", criterion_7, None),
        ("dual pairing is a permutation, |G| <= 24", criterion_8, None),
        ("mapping torus identities, 500 instances", criterion_9, None),
        ("mutation sensitivity of the goldens", criterion_10, None),
    ];
    let mut failures = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let over = budget.filter(|b| elapsed > *b);
        let (status, detail) = match (&result, over) {
            (Ok(d), None) => ("PASS", d.clone()),
            (Ok(d), Some(b)) => ("FAIL", format!("{d}; over the {b:?} budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("criterion {:>2} {status}: {name} ({detail}) [{:.2?}]", i + 1, elapsed);
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
