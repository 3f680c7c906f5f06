use vbent::constructions::{gold_like_family, kasami_family, niho_family, FamilyOutcome};
use vbent::io::write_vf;
use vbent::{DefiningSet, GoldParams, KasamiParams, NihoParams, ReducedPolynomial, USpec};

use crate::output::{report_path, timestamp, write_atomic};
use crate::{ConstructArgs, Context, Failure, Family, Outcome};

fn parse_poly(s: &str, tau: u32, what: &str) -> Result<ReducedPolynomial, Failure> {
    ReducedPolynomial::parse_with_arity(s, tau).map_err(|e| Failure::usage(format!("{what}: {e}")))
}

pub fn run(ctx: &Context, args: &ConstructArgs) -> Outcome {
    let field = ctx.field(args.n)?;
    let k = match args.family {
        Family::Gold => args.n / 4,
        Family::Kasami | Family::Niho => args.n / 2,
    };

    let u = match &args.u {
        Some(list) => Some(
            DefiningSet::parse_hex_list(list).map_err(|e| Failure::usage(format!("--u: {e}")))?,
        ),
        None => None,
    };
    let tau = match (args.tau, &u) {
        (Some(t), Some(set)) if t as usize != set.len() => {
            return Err(Failure::usage(format!(
                "--tau {t} but --u lists {} elements",
                set.len()
            )))
        }
        (Some(t), _) => t,
        (None, Some(set)) => set.len() as u32,
        (None, None) => k,
    };
    let u_spec = u.map_or(USpec::Auto, USpec::Explicit);

    let mut seeds = Vec::new();
    let poly = match (&args.poly, args.seed) {
        (Some(s), _) => parse_poly(s, tau, "--poly")?,
        (None, Some(seed)) => {
            seeds.push(format!("poly:{seed}"));
            ReducedPolynomial::random(tau, tau, seed)?
        }
        (None, None) => return Err(Failure::usage("give --poly or --seed")),
    };
    let tails = if !args.tails.is_empty() {
        if let Some(t) = args.t.filter(|&t| t as usize != args.tails.len()) {
            return Err(Failure::usage(format!(
                "--t {t} but {} --tail polynomials",
                args.tails.len()
            )));
        }
        args.tails
            .iter()
            .map(|s| parse_poly(s, tau, "--tail"))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        let base = args.seed.unwrap_or(0);
        (0..args.t.unwrap_or(0) as u64)
            .map(|i| {
                let seed = base.wrapping_add(i + 1);
                seeds.push(format!("tail{}:{seed}", i + 1));
                ReducedPolynomial::random(tau, tau, seed)
            })
            .collect::<Result<Vec<_>, _>>()?
    };

    let outcome = match args.family {
        Family::Kasami => kasami_family(
            &field,
            &KasamiParams {
                u: u_spec,
                poly,
                tails,
            },
        ),
        Family::Niho => {
            let r = args
                .r
                .ok_or_else(|| Failure::usage("--family niho needs --r"))?;
            niho_family(
                &field,
                &NihoParams {
                    r,
                    u: u_spec,
                    poly,
                    tails,
                },
            )
        }
        Family::Gold => gold_like_family(
            &field,
            &GoldParams {
                u: u_spec,
                poly,
                tails,
            },
        ),
    }?;
    let FamilyOutcome { report, .. } = &outcome;
    let mut report = report.clone();
    report.seeds = seeds;
    if ctx.stamp {
        report.timestamp = Some(timestamp());
    }

    let table = outcome.output();
    let json_path = report_path(&args.out);
    write_atomic(&args.out, &write_vf(table))?;
    write_atomic(&json_path, &(report.to_json() + "\n"))?;

    println!(
        "{} n={} k={} tau={} U={}",
        report.family,
        report.n,
        report.k.unwrap_or(0),
        report.tau,
        report.u.join(",")
    );
    println!("F: {}", report.poly);
    println!("class: {}", report.verified_class);
    match report.predicted_degree {
        Some(d) => println!("degree: {} (predicted {d})", report.measured_degree),
        None => println!("degree: {}", report.measured_degree),
    }
    let matched = report.duals.iter().filter(|d| d.matches).count();
    println!("duals: {matched} of {} match", report.duals.len());
    if let Some(aug) = &report.augmented {
        println!(
            "augmented: (n,{}) plateaued {} tail plateaued {} bent components {}",
            aug.output_dim, aug.plateaued, aug.tail_plateaued, aug.measured_bent_components
        );
    }
    println!("wrote {} and {}", args.out.display(), json_path.display());

    if report.passed() {
        Ok(())
    } else {
        Err(Failure::verification(format!(
            "verification failed: {}",
            report.failures().join("; ")
        )))
    }
}
