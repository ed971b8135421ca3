use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use quiverpot::exactalg::{FieldSpec, MatrixQ, Scalar};
use quiverpot::pbwengine::{
    check_conditions, check_conditions_with, check_pbw2prime, deformation_from_potential, gr_oracle,
    reconstruct_potential, CheckOptions,
};
use quiverpot::potentials::{
    class_of, cycle_classes, cyclic_derivative, cyclic_symmetrize_prime, double_derivative, project_to_potential,
    swap, CycleClass,
};
use quiverpot::quiverpath::{compose, enumerate_paths, Element, Path, Quiver};
use quiverpot::sampling;
use quiverpot::vacualgebra::{cy_check, relation_intersection, theta};
use quiverpot::zoo::{self, ExampleInstance, FitMode, FitOutcome, CubicDeformationCoefficients};
use quiverpot::Error;
use rand::Rng;

type Outcome = Result<String, String>;

fn rat() -> FieldSpec {
    FieldSpec::Rationals
}

fn int(v: i64) -> Scalar {
    rat().from_i64(v)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: quiverpot::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Deletes each occurrence of `a` from each word and reads the remaining
/// letters cyclically.
fn word_derivative(q: &Quiver, words: &[(Scalar, Vec<String>)], a: &str) -> Element {
    let mut out = Element::zero(rat());
    for (c, w) in words {
        for i in (0..w.len()).filter(|&i| w[i] == a) {
            let rest: Vec<&str> = (1..w.len()).map(|s| w[(i + s) % w.len()].as_str()).collect();
            out.add_term(q.path(&rest.join(" ")).unwrap(), c.clone());
        }
    }
    out
}

fn words_element(q: &Quiver, words: &[(Scalar, Vec<String>)]) -> Element {
    let mut x = Element::zero(rat());
    for (c, w) in words {
        x.add_term(q.path(&w.join(" ")).unwrap(), c.clone());
    }
    x
}

fn split(w: &str) -> Vec<String> {
    w.split_whitespace().map(String::from).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn parity(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn ant_words(names: &[String]) -> Vec<(Scalar, Vec<String>)> {
    permutations(names.len())
        .into_iter()
        .map(|p| (int(parity(&p)), p.iter().map(|&i| names[i].clone()).collect()))
        .collect()
}

fn alpha(v: &[i64; 9]) -> MatrixQ {
    MatrixQ::from_i64(rat(), &[v[0..3].to_vec(), v[3..6].to_vec(), v[6..9].to_vec()]).unwrap()
}

/// Jacobi identity of the bracket `[y,z] = row 0`, `[z,x] = row 1`,
/// `[x,y] = row 2` of `α`, evaluated on basis triples.
fn bracket_jacobi(a: &[i64; 9]) -> bool {
    let row = |k: usize| [a[3 * k], a[3 * k + 1], a[3 * k + 2]];
    let bracket = |u: [i64; 3], v: [i64; 3]| {
        let mut out = [0i64; 3];
        for i in 0..3 {
            for j in 0..3 {
                let c = u[i] * v[j];
                if c == 0 || i == j {
                    continue;
                }
                let sign = if (j + 3 - i) % 3 == 1 { 1 } else { -1 };
                for (o, r) in out.iter_mut().zip(row(3 - i - j)) {
                    *o += sign * c * r;
                }
            }
        }
        out
    };
    let e = |i: usize| {
        let mut v = [0i64; 3];
        v[i] = 1;
        v
    };
    let t = [bracket(e(0), bracket(e(1), e(2))), bracket(e(1), bracket(e(2), e(0))), bracket(e(2), bracket(e(0), e(1)))];
    (0..3).all(|i| t[0][i] + t[1][i] + t[2][i] == 0)
}

/// A Jacobi solution (up to a factor 2): antisymmetric part from `r` plus
/// `s sᵀ` with `s ⟂ r`.
fn jacobi_alpha(r: [i64; 3], u: [i64; 3]) -> [i64; 9] {
    let [a, b, c] = r;
    let anti = [0, -c, b, c, 0, -a, -b, a, 0];
    let s = if r == [0, 0, 0] {
        u
    } else {
        [b * u[2] - c * u[1], c * u[0] - a * u[2], a * u[1] - b * u[0]]
    };
    std::array::from_fn(|k| anti[k] + s[k / 3] * s[k % 3])
}

fn cy_bases() -> Vec<ExampleInstance> {
    vec![
        zoo::yang_mills_identity(2).unwrap(),
        zoo::cubic_type_a(int(1), int(2)).unwrap(),
        zoo::antisymmetriser(3).unwrap(),
        zoo::antisymmetriser(5).unwrap(),
        zoo::cyclic_quiver(3, 2, &[2, 2, 2]).unwrap(),
        zoo::two_vertex(3, rat()).unwrap(),
        zoo::two_vertex(4, rat()).unwrap(),
    ]
}

fn yang_mills_identity() -> Outcome {
    let mut checked = 0;
    for s in 1..=3 {
        let inst = ok(zoo::yang_mills_identity(s))?;
        let q = &inst.quiver;
        let d = |i: usize, j: usize| i64::from(i == j);
        let mut words = Vec::new();
        let mut printed = vec![Vec::new(); s + 1];
        for r in 0..=s {
            for l in 0..=s {
                for m in 0..=s {
                    for n in 0..=s {
                        let c = d(r, l) * d(m, n) + d(r, n) * d(l, m) - 2 * d(r, m) * d(l, n);
                        if c != 0 {
                            words.push((int(c), split(&format!("n{r} n{l} n{m} n{n}"))));
                            printed[r].push((int(c), split(&format!("n{l} n{m} n{n}"))));
                        }
                    }
                }
            }
        }
        let w = inst.printed_potential().ok_or("no potential")?;
        for r in 0..=s {
            let four = words_element(q, &printed[r]).scale(&int(4));
            ensure(cyclic_derivative(q, &w, r) == four, || format!("s={s}, rho={r}: library derivative"))?;
            ensure(word_derivative(q, &words, &format!("n{r}")) == four, || format!("s={s}, rho={r}: word derivative"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} derivatives equal 4 W^rho"))
}

fn cubic_type_a() -> Outcome {
    for (a, b) in [(1, 2), (0, 0), (3, -1)] {
        let inst = ok(zoo::cubic_type_a(int(a), int(b)))?;
        let q = &inst.quiver;
        let w = inst.printed_potential().ok_or("no potential")?;
        let el = |t: &[(i64, &str)]| words_element(q, &t.iter().map(|(c, s)| (int(*c), split(s))).collect::<Vec<_>>());
        let f = el(&[(a, "y y x"), (b, "y x y"), (a, "x y y"), (1, "x x x")]);
        let g = el(&[(1, "y y y"), (a, "y x x"), (b, "x y x"), (a, "x x y")]);
        ensure(cyclic_derivative(q, &w, 0) == f.scale(&int(4)), || format!("({a},{b}): d_x W4 != 4f"))?;
        ensure(cyclic_derivative(q, &w, 1) == g.scale(&int(4)), || format!("({a},{b}): d_y W4 != 4g"))?;
    }
    let inst = ok(zoo::cubic_type_a(int(1), int(2)))?;
    for v in [[1, 0, 0, 0, 0, 0, 0, 0, 0], [2, -1, 3, 5, 7, -2, 4, 1, -6], [0, 0, 0, 0, 0, 0, 0, 3, 4]] {
        let c = CubicDeformationCoefficients::from_i64(rat(), v);
        let d = ok(zoo::type_a_deformation(&inst, &c))?;
        let expected = ok(zoo::type_a_expected_lower(&inst, &c))?;
        ensure(ok(reconstruct_potential(&d))? == expected, || format!("deformation {v:?}: reconstruction differs"))?;
    }
    Ok("derivatives for 3 parameter pairs, 3 deformation reconstructions".into())
}

fn antisymmetriser() -> Outcome {
    for n in [4, 6] {
        let inst = ok(zoo::antisymmetriser(n))?;
        let q = &inst.quiver;
        let names: Vec<String> = (0..n).map(|i| q.arrow_name(i).to_string()).collect();
        let full = words_element(q, &ant_words(&names));
        ensure(ok(project_to_potential(q, &full))?.is_zero(), || format!("n={n}: projection nonzero"))?;
        let fit = ok(zoo::fit_potential(q, &inst.relations, FitMode::PerGeneratorLine, 1))?;
        ensure(fit == FitOutcome::Infeasible, || format!("n={n}: fit gave {fit:?}"))?;
    }
    for n in [3, 5] {
        let inst = ok(zoo::antisymmetriser(n))?;
        let q = &inst.quiver;
        let names: Vec<String> = (0..n).map(|i| q.arrow_name(i).to_string()).collect();
        let w = inst.potential.as_ref().ok_or("no potential")?;
        for i in 0..n {
            let others: Vec<String> = names.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect();
            let expected = words_element(q, &ant_words(&others)).scale(&int(if i % 2 == 0 { 1 } else { -1 }));
            ensure(cyclic_derivative(q, w, i) == expected, || format!("n={n}, i={i}: sign formula"))?;
        }
    }
    let dims = ok(quiverpot::vacualgebra::build_graded(&ok(zoo::antisymmetriser(3))?.relations, 4))?.dims();
    ensure(dims == [1, 3, 6, 10, 15], || format!("n=3 dims {dims:?}"))?;
    Ok("n=4,6 no potential; n=3,5 signs; dims 1,3,6,10,15".into())
}

fn lie_residue_formula() -> Outcome {
    let mut rng = sampling::rng(4);
    let mut symmetric = 0;
    for k in 0..200 {
        let mut v: [i64; 9] = std::array::from_fn(|_| rng.random_range(-5..=5));
        if k % 2 == 0 {
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                v[3 * j + i] = v[3 * i + j];
            }
        }
        let d = ok(zoo::antisym3_lie(&alpha(&v)))?.deformation;
        let q = d.base().quiver().clone();
        let residue = ok(check_pbw2prime(&d))?.remove(0);
        let coeff = [v[7] - v[5], v[2] - v[6], v[3] - v[1]];
        let mut formula = Element::zero(rat());
        for (c, (p, m)) in coeff.iter().zip([("y z", "z y"), ("z x", "x z"), ("x y", "y x")]) {
            formula.add_term(q.path(p).unwrap(), int(*c));
            formula.add_term(q.path(m).unwrap(), int(-c));
        }
        ensure(residue == formula, || format!("alpha {v:?}: residue differs from formula"))?;
        let is_sym = v[1] == v[3] && v[2] == v[6] && v[5] == v[7];
        ensure(residue.is_zero() == is_sym, || format!("alpha {v:?}: zero residue vs symmetry"))?;
        symmetric += usize::from(is_sym);
    }
    Ok(format!("200 samples, {symmetric} symmetric"))
}

fn jacobi_versus_pbw() -> Outcome {
    let mut rng = sampling::rng(5);
    let mut holding = 0;
    for k in 0..200 {
        let r: [i64; 3] = std::array::from_fn(|_| rng.random_range(-2..=2));
        let u: [i64; 3] = std::array::from_fn(|_| rng.random_range(-2..=2));
        let mut v = jacobi_alpha(r, u);
        if k % 2 == 1 {
            for x in v.iter_mut() {
                *x += rng.random_range(-1..=1);
            }
        }
        let lie = ok(zoo::antisym3_lie(&alpha(&v)))?;
        let rep = ok(check_conditions_with(&lie.deformation, CheckOptions::without_base_check()))?;
        let expected = bracket_jacobi(&v);
        ensure(rep.overall == expected, || format!("alpha {v:?}: conditions {} vs Jacobi {expected}", rep.overall))?;
        ensure(lie.jacobi.holds == expected, || format!("alpha {v:?}: Jacobi equations disagree with bracket"))?;
        holding += usize::from(expected);
    }
    let violating = [1, 0, 0, 0, 0, 1, 0, 0, 0];
    let lie = ok(zoo::antisym3_lie(&alpha(&violating)))?;
    let verdict = ok(gr_oracle(&lie.deformation, 4, 2))?;
    let at = verdict.violation.ok_or("oracle saw no violation")?;
    ensure(at <= 4, || format!("violation only at degree {at}"))?;
    Ok(format!("200 samples ({holding} Jacobi); oracle violation at degree {at}"))
}

fn lie_solution_dims() -> Outcome {
    let zero = ok(zoo::lie_solution_space_dim([int(0), int(0), int(0)]))?;
    let one = ok(zoo::lie_solution_space_dim([int(1), int(0), int(0)]))?;
    ensure(zero == 6 && one == 3, || format!("dims {zero}, {one}"))?;
    Ok("r=0: 6, r=(1,0,0): 3".into())
}

fn two_vertex() -> Outcome {
    let f2 = FieldSpec::PrimeField(2);
    let inst = ok(zoo::two_vertex(3, f2))?;
    let d1 = ok(zoo::two_vertex_deformation(&inst, 1))?;
    let r = ok(check_conditions(&d1))?;
    let d2 = ok(zoo::two_vertex_deformation(&inst, 2))?;
    let second_ok = ok(check_pbw2prime(&d2))?.iter().all(Element::is_zero)
        && ok(deformation_from_potential(&inst.relations, &ok(zoo::two_vertex_expected_lower(&inst))?))? == d2;
    let f3 = FieldSpec::PrimeField(3);
    let inst3 = ok(zoo::two_vertex(3, f3))?;
    let d3 = ok(zoo::two_vertex_deformation(&inst3, 3))?;
    let third_ok = ok(check_pbw2prime(&d3))?.iter().all(Element::is_zero)
        && matches!(reconstruct_potential(&d3), Err(Error::CharacteristicDividesFactorial { characteristic: 3, .. }));
    ensure(second_ok, || "(ii) deformation #2".into())?;
    ensure(third_ok, || "(iii) deformation #3".into())?;
    let q = &inst.quiver;
    let failing: Vec<String> = [("PBW1", &r.pbw1), ("PBW2", &r.pbw2), ("PBW4", &r.pbw4)]
        .into_iter()
        .chain(r.pbw3.iter().enumerate().map(|(i, c)| (["PBW3 j=1", "PBW3 j=2"][i.min(1)], c)))
        .filter(|(_, c)| !c.holds)
        .map(|(name, c)| format!("{name} (witness {})", c.witness.as_ref().map_or("-".into(), |w| w.display(q))))
        .collect();
    ensure(!r.pbw2prime.holds, || "(i) PBW2' holds for deformation #1".into())?;
    ensure(failing.is_empty(), || format!("(i) deformation #1 fails {}; (ii), (iii) pass", failing.join(", ")))?;
    Ok("(i) PBW1-4 hold, PBW2' fails; (ii) and (iii) pass".into())
}

fn generic_mu_nu() -> Outcome {
    let r = ok(zoo::two_vertex_mu_nu(3, zoo::FIT_FIELD, 20, 11))?;
    ensure(r.samples.len() == 20 && r.all_zero(), || format!("{r:?}"))?;
    Ok(format!("20 samples over {}, solution dim {}", zoo::FIT_FIELD, r.solution_dim))
}

fn intersection_dims() -> Outcome {
    let mut names = Vec::new();
    for inst in cy_bases() {
        let inter = ok(relation_intersection(&inst.relations))?;
        let nv = inst.quiver.vertex_count();
        ensure(inter.dim() == nv, || format!("{}: dim {} != {nv}", inst.name, inter.dim()))?;
        let w = inst.potential.as_ref().ok_or("no potential")?;
        let th = ok(theta(&inst.quiver, w))?;
        ensure(th.is_independent() && th.images().len() == nv && th.is_two_sided(), || {
            format!("{}: theta images are not a basis", inst.name)
        })?;
        let target = ok(inter.subspace(&inst.quiver, rat()))?;
        let images = ok(quiverpot::BimoduleSpan::graded(&inst.quiver, rat(), inst.relation_degree() + 1, th.images()))?;
        ensure(images.space() == &target, || format!("{}: theta span differs", inst.name))?;
        names.push(inst.name);
    }
    Ok(names.join(", "))
}

fn cy_exactness() -> Outcome {
    let mut done = Vec::new();
    for inst in cy_bases() {
        let d = inst.relation_degree() + 4;
        let w = inst.potential.as_ref().ok_or("no potential")?;
        let rep = ok(cy_check(&inst.quiver, w, d))?;
        ensure(rep.consistent(), || format!("{} at D={d}: {:?}", inst.name, rep.first_failure))?;
        done.push(format!("{}@{d}", inst.name));
    }
    let one = ok(zoo::one_loop_cubic())?;
    let d = one.relation_degree() + 4;
    let rep = ok(cy_check(&one.quiver, one.potential.as_ref().ok_or("no potential")?, d))?;
    ensure(!rep.consistent(), || "one-loop cubic passed".into())?;
    done.push(format!("one-loop rejected@{d}"));
    Ok(done.join(", "))
}

fn round_trip() -> Outcome {
    let mut total = 0;
    for (i, inst) in cy_bases().into_iter().enumerate() {
        let mut rng = sampling::rng(1000 + i as u64);
        let n = inst.relation_degree();
        for _ in 0..100 {
            let terms = rng.random_range(1..=3);
            let w = sampling::random_potential(&mut rng, &inst.quiver, rat(), 1..=n, terms);
            let d = ok(deformation_from_potential(&inst.relations, &w))?;
            let back = ok(reconstruct_potential(&d))?;
            ensure(back == w, || format!("{}: round trip differs", inst.name))?;
            total += 1;
        }
    }
    Ok(format!("{total} potentials"))
}

/// `j · Σ q` over paths `q` of length `j−1` with `a q` in the class `σ`.
fn prime_derivative_oracle(q: &Quiver, sigma: &CycleClass, a: usize) -> Element {
    let j = sigma.len();
    let mut out = Element::zero(rat());
    for p in enumerate_paths(q, j - 1, None, None) {
        let Some(ap) = compose(&Path::arrow(q, a), &p) else {
            continue;
        };
        if ap.is_cycle() && &class_of(q, &ap).unwrap() == sigma {
            out.add_term(p, int(j as i64));
        }
    }
    out
}

fn cyclic_derivative_identities() -> Outcome {
    let q = ok(Quiver::one_vertex(&["x", "y"]))?;
    let mut classes = 0;
    for j in 1..=6 {
        for k in cycle_classes(&q, j) {
            let projected = ok(project_to_potential(&q, &cyclic_symmetrize_prime(&q, rat(), &k)))?;
            for a in 0..2 {
                ensure(cyclic_derivative(&q, &projected, a) == prime_derivative_oracle(&q, &k, a), || {
                    format!("class {} arrow {a}", k.display(&q))
                })?;
            }
            classes += 1;
        }
    }
    for power in ["x x x x x x", "y x y x y x", "y y x y y x"] {
        let k = ok(class_of(&q, &ok(q.path(power))?))?;
        let projected = ok(project_to_potential(&q, &cyclic_symmetrize_prime(&q, rat(), &k)))?;
        ensure(cyclic_derivative(&q, &projected, 0) == prime_derivative_oracle(&q, &k, 0), || power.to_string())?;
    }
    let mut rng = sampling::rng(12);
    for _ in 0..100 {
        let w = sampling::random_potential(&mut rng, &q, rat(), 2..=5, 3);
        for a in 0..2 {
            for b in 0..2 {
                let lhs = double_derivative(&q, &cyclic_derivative(&q, &w, b), a);
                let rhs = swap(&double_derivative(&q, &cyclic_derivative(&q, &w, a), b));
                ensure(lhs == rhs, || format!("der identity for {}", w.display(&q)))?;
            }
        }
    }
    Ok(format!("{classes} classes of length <= 6; der identity on 100 potentials"))
}

type Criterion = (&'static str, u64, fn() -> Outcome);

const CRITERIA: [Criterion; 12] = [
    ("Yang-Mills derivative identity", 1, yang_mills_identity),
    ("cubic type A derivatives and deformation reconstruction", 1, cubic_type_a),
    ("antisymmetriser potentials", 10, antisymmetriser),
    ("PBW2' residue versus symmetric alpha", 5, lie_residue_formula),
    ("Jacobi versus PBW conditions", 30, jacobi_versus_pbw),
    ("Lie solution-space dimensions", 5, lie_solution_dims),
    ("two-vertex deformations", 5, two_vertex),
    ("generic mu = nu = 0", 10, generic_mu_nu),
    ("intersection dimension", 5, intersection_dims),
    ("truncated Calabi-Yau exactness", 60, cy_exactness),
    ("derive/reconstruct round trip", 30, round_trip),
    ("cyclic derivative identities", 10, cyclic_derivative_identities),
];

fn main() -> ExitCode {
    std::panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, budget, f)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > Duration::from_secs(*budget) => {
                Err(format!("{detail}; took {:.1}s, budget {budget}s", elapsed.as_secs_f64()))
            }
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS {:>2} {name} ({:.2}s): {detail}", i + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name} ({:.2}s): {why}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failures, CRITERIA.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
