//! The `verify` suites. Random data is always drawn as exact rationals from
//! the seed, so both backends see the same inputs.

use magnus_core::boundary::{double_row_monodromy, gauge_solve, reflection_hat, BoundaryProblem, GaugeProblem};
use magnus_core::brace::{
    bch, brace_mul, graded_add, graded_max_abs, graded_sub, omega_map, w_map, GradedPreLieElement, SequencePreLie,
};
use magnus_core::expansion::{
    dyson_terms, magnus_closed_form, magnus_from_dyson, monodromy_direct, q_series, DysonMethod, MagnusStyle,
    CLOSED_FORM_MAX_ORDER,
};
use magnus_core::rota_baxter::{check_prelie, check_tridendriform, rb_residual, PreLieKind, RbOperand};
use magnus_core::sample::{self, SampleRng};
use magnus_core::yangian::{
    classical_r, classical_ybe_residual, coproduct_tridendriform_residual, hopf_checks, monodromy_coproduct,
    q_generators_and_relations, rtt_residual, rtt_truncated_residual, sample_triples, transfer_commute_residual,
    ybe_residual, yangian_r, yangian_r_difference, yangian_relations_max_defect, GlRep, LaxRep,
};
use magnus_core::{
    int, rat, series_exp, AlphaSeries, Direction, Matrix, OpPoly, Operator, Rational, RotaBaxterOp, SiteOperatorFamily,
    SiteSequence,
};
use rand::Rng;

use crate::report::{Backend, Builder};

type M = Matrix<Rational>;

pub const SUITES: [&str; 8] = ["rota-baxter", "tridendriform", "prelie", "dyson", "magnus", "brace", "yangian", "boundary"];

#[derive(Debug, Clone)]
pub struct Options {
    pub seed: u64,
    pub sites: usize,
    /// `𝒩` for the Yangian suite.
    pub rank: usize,
    pub dim: usize,
    pub cases: usize,
    pub order: usize,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn run(suite: &str, opts: &Options, b: &mut Builder) -> Result<(), String> {
    match (suite, b.backend()) {
        ("yangian", Backend::Exact) => yangian(opts, b),
        ("boundary", Backend::Exact) => boundary(opts, b),
        ("yangian" | "boundary", Backend::Float) => Err(format!("suite {suite} runs on the exact backend only")),
        (s, Backend::Exact) if SUITES.contains(&s) => generic(s, opts, b, |m: &M| m.clone()),
        (s, Backend::Float) if SUITES.contains(&s) => generic(s, opts, b, M::to_f64),
        (s, _) => Err(format!("unknown suite {s:?}; expected one of {}", SUITES.join(", "))),
    }
}

fn seq(rng: &mut SampleRng, dim: usize, sites: usize) -> SiteSequence<M> {
    SiteSequence::from_fn(&M::zeros(dim, dim), sites, |_| sample::rational_matrix(rng, dim, 4)).expect("sites agree")
}

fn generic<O: Operator>(suite: &str, o: &Options, b: &mut Builder, conv: impl Fn(&M) -> O + Copy) -> Result<(), String> {
    let mut rng = sample::rng(o.seed);
    let like = conv(&M::zeros(o.dim, o.dim));
    let cs = |s: &SiteSequence<M>| SiteSequence::new(&like, s.values().iter().map(conv).collect()).expect("shapes agree");
    let params = format!("sites={} dim={}", o.sites, o.dim);
    match suite {
        "rota-baxter" => {
            for c in 0..o.cases {
                let (x, y) = (cs(&seq(&mut rng, o.dim, o.sites)), cs(&seq(&mut rng, o.dim, o.sites)));
                let r = rb_residual(&RotaBaxterOp::PartialSum, &RbOperand::Sites(x), &RbOperand::Sites(y)).map_err(err)?;
                b.defect(format!("rb-sum-{c:03}"), "R(a)R(b) = R(R(a)b + aR(b) + ab)", &params, r.max_abs());
                let x0 = rat(rng.random_range(-3..=3), rng.random_range(1..=3));
                let mut poly = || {
                    let deg = rng.random_range(0..=3);
                    OpPoly::from_coeffs((0..=deg).map(|_| conv(&sample::rational_matrix(&mut rng, o.dim, 3))).collect())
                };
                let (p, q) = (poly(), poly());
                let r = rb_residual(&RotaBaxterOp::RiemannIntegral { x0: x0.clone() }, &RbOperand::Poly(p), &RbOperand::Poly(q))
                    .map_err(err)?;
                b.defect(format!("rb-int-{c:03}"), "I(A)I(B) = I(I(A)B + AI(B))", format!("x0={x0} dim={}", o.dim), r.max_abs());
            }
        }
        "tridendriform" => {
            let mut misprint = 0.0f64;
            for c in 0..o.cases {
                let (x, y, z) = (cs(&seq(&mut rng, o.dim, o.sites)), cs(&seq(&mut rng, o.dim, o.sites)), cs(&seq(&mut rng, o.dim, o.sites)));
                let rep = check_tridendriform(&x, &y, &z).map_err(err)?;
                for (k, ax) in rep.axioms.iter().chain(std::iter::once(&rep.star_associativity)).enumerate() {
                    b.defect(format!("trid-{c:03}-{}", k + 1), ax.label, &params, ax.max_abs());
                }
                misprint = misprint.max(rep.misprinted_second_axiom.max_abs());
            }
            b.note("misprinted-second-axiom-max-defect", format!("{misprint:e}"));
        }
        "prelie" => {
            for c in 0..o.cases {
                let (x, y, z) = (cs(&seq(&mut rng, o.dim, o.sites)), cs(&seq(&mut rng, o.dim, o.sites)), cs(&seq(&mut rng, o.dim, o.sites)));
                for (kind, name, prop) in [
                    (PreLieKind::Left, "left", "(a▷b)▷c - a▷(b▷c) symmetric in a, b"),
                    (PreLieKind::Right, "right", "(a◁b)◁c - a◁(b◁c) symmetric in b, c"),
                ] {
                    let r = check_prelie(kind, &x, &y, &z).map_err(err)?;
                    b.defect(format!("prelie-{name}-{c:03}"), prop, &params, r.max_abs());
                }
            }
        }
        "dyson" | "magnus" => {
            let mut offending = Vec::new();
            for c in 0..o.cases {
                let degrees = rng.random_range(1..=3);
                let exact = sample::matrix_family(&mut rng, o.dim, o.sites, degrees, 3, Direction::Forward);
                for dir in [Direction::Forward, Direction::Backward] {
                    let fam = exact.map(&like, conv).with_direction(dir);
                    let p = format!("{params} degrees={degrees} order={} direction={}", o.order, dir.name());
                    let t = monodromy_direct(&fam, o.order);
                    if suite == "dyson" {
                        for (method, name) in [(DysonMethod::DirectSum, "direct"), (DysonMethod::Tridendriform, "tridendriform")] {
                            let terms = dyson_terms(&fam, o.order, method).map_err(err)?;
                            let d = terms.iter().zip(&t.coeffs()[1..]).map(|(a, b)| a.sub(b).max_abs()).fold(0.0, f64::max);
                            b.defect(format!("dyson-{c:03}-{}-{name}", dir.name()), format!("{name} Dyson terms = T_m"), &p, d);
                        }
                        continue;
                    }
                    let q = magnus_from_dyson(&t.coeffs()[1..]);
                    let back = series_exp(&q_series(fam.like(), &q)).map_err(err)?;
                    b.defect(format!("magnus-{c:03}-{}-exp", dir.name()), "exp(Σ α^m Q_m) = T", &p, back.sub(&t).map_err(err)?.max_abs());
                    let closed = o.order.min(CLOSED_FORM_MAX_ORDER);
                    let pl = magnus_closed_form(&fam, MagnusStyle::PreLie, closed).map_err(err)?;
                    b.defect(
                        format!("magnus-{c:03}-{}-prelie", dir.name()),
                        "pre-Lie closed form = log recursion",
                        &p,
                        pl.defects.iter().copied().fold(0.0, f64::max),
                    );
                    let ex = magnus_closed_form(&fam, MagnusStyle::Explicit, closed).map_err(err)?;
                    offending.extend(ex.offending_terms().into_iter().map(|(m, l, d)| format!("case {c} {} Q{m} [{l}] {d:e}", dir.name())));
                }
            }
            if suite == "magnus" {
                b.note("explicit-form-offending-terms", offending.len().to_string());
                for (i, t) in offending.iter().enumerate() {
                    b.note(format!("explicit-offender-{i:03}"), t);
                }
            }
        }
        "brace" => {
            let alg = SequencePreLie::new(&like, o.sites);
            let graded = |rng: &mut SampleRng| {
                GradedPreLieElement::new((0..o.order.max(1)).map(|_| cs(&seq(rng, o.dim, o.sites))).collect())
            };
            let p = format!("{params} degree={}", o.order.max(1));
            for c in 0..o.cases {
                let (x, y, z) = (graded(&mut rng), graded(&mut rng), graded(&mut rng));
                let diff = |l: &GradedPreLieElement<_>, r: &GradedPreLieElement<_>| -> Result<f64, String> {
                    Ok(graded_max_abs(&alg, &graded_sub(&alg, l, r).map_err(err)?))
                };
                let w = w_map(&alg, &x).map_err(err)?;
                b.defect(format!("brace-{c:03}-omega-w"), "Ω(W(a)) = a", &p, diff(&omega_map(&alg, &w).map_err(err)?, &x)?);
                let wo = w_map(&alg, &omega_map(&alg, &x).map_err(err)?).map_err(err)?;
                b.defect(format!("brace-{c:03}-w-omega"), "W(Ω(a)) = a", &p, diff(&wo, &x)?);
                let lhs = brace_mul(&alg, &x, &graded_add(&alg, &y, &z).map_err(err)?).map_err(err)?;
                let rhs = graded_sub(
                    &alg,
                    &graded_add(&alg, &brace_mul(&alg, &x, &y).map_err(err)?, &brace_mul(&alg, &x, &z).map_err(err)?).map_err(err)?,
                    &x,
                )
                .map_err(err)?;
                b.defect(format!("brace-{c:03}-distributive"), "a∘(b+c) = a∘b + a∘c - a", &p, diff(&lhs, &rhs)?);
                let composed = brace_mul(&alg, &w, &w_map(&alg, &y).map_err(err)?).map_err(err)?;
                let via_bch = w_map(&alg, &bch(&alg, &x, &y).map_err(err)?).map_err(err)?;
                b.defect(format!("brace-{c:03}-bch"), "W(a)∘W(b) = W(BCH(a, b))", &p, diff(&composed, &via_bch)?);
            }
        }
        _ => unreachable!("suite list checked by the caller"),
    }
    Ok(())
}

fn yangian(o: &Options, b: &mut Builder) -> Result<(), String> {
    let n = o.dim;
    let p = format!("N={} dim={n}", o.rank);
    for (i, (l1, l2, l3)) in sample_triples().iter().enumerate() {
        let pt = format!("dim={n} λ=({l1}, {l2}, {l3})");
        b.defect(format!("ybe-{i:02}"), "R12 R13 R23 = R23 R13 R12", &pt, ybe_residual(&yangian_r(n), l1, l2, l3).map_err(err)?.max_abs());
        b.defect(
            format!("ybe-difference-{i:02}"),
            "YBE for R(u) = u + P",
            &pt,
            ybe_residual(&yangian_r_difference(n), l1, l2, l3).map_err(err)?.max_abs(),
        );
    }
    let (a, c2, c3) = (int(3), int(2), int(0));
    b.defect("classical-ybe", "[r12, r13] + [r12, r23] + [r13, r23] = 0", format!("dim={n}"), classical_ybe_residual(&classical_r(n), &a, &c2, &c3).map_err(err)?.max_abs());

    let samples: Vec<Rational> = (1..=5).map(|k| rat(k, 2)).collect();
    let rtt = rtt_residual(&yangian_r(n), &LaxRep::fundamental(n), &samples).map_err(err)?;
    b.defect("rtt-fundamental", "R T1 T2 = T2 T1 R", format!("dim={n} pairs={}", rtt.pairs), rtt.max_defect);
    if n * n * n * n <= 256 {
        let rtt = rtt_residual(&yangian_r(n), &LaxRep::linear(GlRep::tensor_square(n)), &samples).map_err(err)?;
        b.defect("rtt-tensor-square", "R T1 T2 = T2 T1 R on V⊗V", format!("dim={n} pairs={}", rtt.pairs), rtt.max_defect);
    }
    let geo = LaxRep::geometric(GlRep::fundamental(n), o.order.max(1));
    b.defect("rtt-geometric-truncated", "truncated RTT for the geometric lax", format!("dim={n} degree={}", o.order.max(1)), rtt_truncated_residual(&geo).map_err(err)?);

    for sites in 1..=o.rank {
        b.defect(
            format!("transfer-{sites}"),
            "[t(α), t(β)] = 0",
            format!("dim={n} N={sites} order={}", o.order),
            transfer_commute_residual(n, sites, o.order).map_err(err)?,
        );
    }
    let mono = monodromy_coproduct(&LaxRep::fundamental(n), o.rank, 4).map_err(err)?;
    b.defect("relations", "Yangian relations through total degree 3", &p, yangian_relations_max_defect(&mono, 3).map_err(err)?);
    let q = q_generators_and_relations(&mono).map_err(err)?;
    b.defect("q-relations-1-1", "[Q1, Q1] relation", &p, q.q1_q1);
    b.defect("q-relations-1-2", "[Q1, Q2] relation", &p, q.q1_q2);
    b.defect("q-relations-2-2", "[Q2, Q2] relation, shared 1/12", &p, q.q2_q2_shared_twelfth);
    b.note("q-relations-2-2-split-twelfth", format!("{:e}", q.q2_q2_split_twelfth));
    if o.rank >= 2 {
        let cop = coproduct_tridendriform_residual(&LaxRep::fundamental(n), o.rank, 3).map_err(err)?;
        for (m, d) in cop.dyson_entries.iter().enumerate() {
            b.defect(format!("coproduct-dyson-{}", m + 1), "entrywise coproduct of T_m", &p, *d);
        }
        b.defect("coproduct-q1", "coproduct of Q1 entries", &p, cop.q1);
        b.defect("coproduct-q2", "coproduct of Q2 entries", &p, cop.q2);
        b.defect("coproduct-slot-symmetry", "slot symmetry", &p, cop.slot_symmetry);
    }
    let h = hopf_checks(n).map_err(err)?;
    let dim = format!("dim={n}");
    b.defect("hopf-coproduct-q1", "Δ(Q1) = Q1⊗1 + 1⊗Q1", &dim, h.coproduct_q1);
    b.defect("hopf-coproduct-q2", "Δ(Q2) from the two-site logarithm", &dim, h.coproduct_q2);
    b.defect("hopf-log-order-two", "two-site log at order two", &dim, h.log_order_two);
    b.defect("hopf-coassociativity", "(Δ⊗1)Δ = (1⊗Δ)Δ", &dim, h.coassociativity);
    b.check("hopf-counit", "ε(T(α)) = 1", &dim, h.counit_is_identity);
    b.defect("hopf-antipode-q1", "S(Q1) = -Q1", &dim, h.antipode_q1);
    b.note("hopf-coproduct-q2-swapped-placement", format!("{:e}", h.coproduct_q2_swapped));
    b.note("hopf-antipode-q2-vs-linear-form", format!("{}", h.antipode_q2_vs_linear_form));
    Ok(())
}

fn boundary(o: &Options, b: &mut Builder) -> Result<(), String> {
    let mut rng = sample::rng(o.seed);
    let p = format!("sites={} dim={} order={}", o.sites, o.dim, o.order);
    for c in 0..o.cases {
        let f = sample::matrix_family(&mut rng, o.dim, o.sites, 3, 3, Direction::Forward);
        let g = sample::matrix_family(&mut rng, o.dim, o.sites, 3, 3, Direction::Forward);
        let g1 = sample::invertible_matrix(&mut rng, o.dim, 3);
        let sol = gauge_solve(&GaugeProblem { forward: f.clone(), target: g, g1, order: o.order }).map_err(err)?;
        b.defect(format!("gauge-{c:03}"), "G_{n+1} L_n = L'_n G_n", &p, sol.max_residual());
        let k = AlphaSeries::new(vec![sample::invertible_matrix(&mut rng, o.dim, 3), sample::int_matrix(&mut rng, o.dim, 3)])
            .map_err(err)?
            .truncate(o.order);
        let hat = reflection_hat(&f, o.order).map_err(err)?;
        let row = double_row_monodromy(&BoundaryProblem { forward: f, backward: hat, k, order: o.order }).map_err(err)?;
        b.defect(format!("double-row-{c:03}"), "𝕋_{n+1} = 𝕃_n 𝕋_n 𝕃̂_n", &p, row.max_residual());
    }
    let lax = LaxRep::fundamental(o.dim);
    let like = M::zeros(lax.dim(), lax.dim());
    let mut fam = SiteOperatorFamily::new(&like, o.sites, Direction::Forward);
    for s in 1..=o.sites {
        fam.set(s, 1, lax.coeff(1)).map_err(err)?;
    }
    let hat = reflection_hat(&fam, o.order).map_err(err)?;
    let row = double_row_monodromy(&BoundaryProblem { forward: fam, backward: hat, k: AlphaSeries::identity(&like, o.order), order: o.order })
        .map_err(err)?;
    b.defect("double-row-fundamental", "reflection of the fundamental lax", &p, row.max_residual());
    Ok(())
}
