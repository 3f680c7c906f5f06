use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use vbent::io::{read_table, TableFile};
use vbent::propp::{find_defining_sets, satisfies_p};
use vbent::{
    max_bent_components_bound, BooleanFunction, DefiningSet, FieldSpec, SearchOptions,
    VectorialFunction,
};

use crate::{Context, Failure, Outcome, ProppArgs};

fn load(ctx: &Context, path: &Path) -> Result<TableFile, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let table =
        read_table(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let field: &FieldSpec = match &table {
        TableFile::Boolean(f) => f.field(),
        TableFile::Vectorial(f) => f.field(),
    };
    if let Some(m) = ctx.field_modulus.filter(|&m| m != field.modulus()) {
        return Err(Failure::usage(format!(
            "file uses modulus {:x}, --field-modulus gives {m:x}",
            field.modulus()
        )));
    }
    Ok(table)
}

/// `|W| x count` pairs, ascending.
fn spectrum_summary(f: &BooleanFunction) -> String {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for v in f.walsh_transform().values() {
        *counts.entry(v.unsigned_abs()).or_default() += 1;
    }
    counts
        .iter()
        .map(|(v, c)| format!("|W|={v} x{c}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn verify_boolean(f: &BooleanFunction) {
    let w = f.walsh_transform();
    println!("function: BF n={}", f.n());
    println!("class: {}", w.class());
    println!("degree: {}", f.degree());
    println!("weight: {}", f.weight());
    println!("spectrum: {}", spectrum_summary(f));
}

fn verify_vectorial(f: &VectorialFunction) {
    let dim = f.output_dim();
    let bent = f.n().is_multiple_of(2) && f.is_vectorial_bent().is_ok_and(|v| v.holds);
    let plateaued = f.is_vectorial_plateaued();
    let class = if bent {
        "vectorial bent"
    } else if plateaued.holds {
        "vectorial plateaued"
    } else {
        "not vectorial plateaued"
    };
    let classes = f.component_classes();
    let bent_count = classes.iter().filter(|(_, c)| c.is_bent()).count();
    println!("function: VF n={} m={} t={}", f.n(), f.m(), f.t());
    println!("class: {class} ({},{dim})", f.n());
    println!("degree: {}", f.degree());
    let bound =
        max_bent_components_bound(f.n(), dim).map_or_else(|_| "n/a".to_string(), |b| b.to_string());
    println!(
        "components: {} bent {bent_count} bound {bound}",
        classes.len()
    );
    let amplitudes = plateaued
        .amplitude_multiset()
        .into_iter()
        .map(|(s, c)| match s {
            Some(s) => format!("2^{s} x{c}"),
            None => format!("mixed x{c}"),
        })
        .collect::<Vec<_>>()
        .join(", ");
    println!("amplitudes: {amplitudes}");
    if let Some(sel) = plateaued.witness {
        println!("non-plateaued component: {sel}");
    }
}

pub fn verify(ctx: &Context, path: &Path) -> Outcome {
    match load(ctx, path)? {
        TableFile::Boolean(f) => verify_boolean(&f),
        TableFile::Vectorial(f) => verify_vectorial(&f),
    }
    Ok(())
}

fn parse_search(s: &str) -> Result<usize, Failure> {
    s.strip_prefix("tau=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Failure::usage(format!("--search expects tau=<int>, got {s:?}")))
}

pub fn propp(ctx: &Context, args: &ProppArgs) -> Outcome {
    let g = match load(ctx, &args.file)? {
        TableFile::Boolean(g) => g,
        TableFile::Vectorial(_) => {
            return Err(Failure::usage("propp needs a BF file"));
        }
    };

    if let Some(list) = &args.u {
        let set =
            DefiningSet::parse_hex_list(list).map_err(|e| Failure::usage(format!("--u: {e}")))?;
        for &u in set.elements() {
            g.field().check(u)?;
        }
        let verdict = satisfies_p(&g, &set);
        return match verdict.failure {
            None => {
                println!("property holds on U = {{{}}}", set.to_hex_list());
                Ok(())
            }
            Some(p) => {
                let u = set.elements();
                println!(
                    "property fails: D_{:#x} D_{:#x} g({:#x}) = 1",
                    u[p.i], u[p.j], p.witness
                );
                Err(Failure::precondition(format!(
                    "pair ({}, {}) of U, witness {:#x}",
                    p.i + 1,
                    p.j + 1,
                    p.witness
                )))
            }
        };
    }

    let tau = parse_search(args.search.as_deref().unwrap_or_default())?;
    let options = SearchOptions {
        limit: args.limit,
        node_budget: args.budget,
        candidates: None,
    };
    let found = find_defining_sets(&g, tau, &options)?;
    for set in &found.sets {
        println!("{}", set.to_hex_list());
    }
    println!(
        "{} sets of size {tau}{}",
        found.count,
        if found.truncated {
            " (list truncated)"
        } else {
            ""
        }
    );
    if found.complete {
        Ok(())
    } else {
        Err(Failure::precondition(format!(
            "search stopped after {} nodes",
            found.nodes
        )))
    }
}
