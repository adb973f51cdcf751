use std::time::Instant;

use tas_sop::harness::{builtin_recipes, emit_csv, parse_csv};

#[test]
fn every_builtin_recipe_runs_and_passes_its_checks() {
    for recipe in builtin_recipes().unwrap() {
        let start = Instant::now();
        let result = recipe.run().unwrap();
        assert!(result.failures.is_empty(), "{}: {:?}", recipe.name, result.failures);
        let s = &recipe.spec;
        assert_eq!(result.rows.len(), s.values.len() * s.scenarios.len() * s.methods.len(), "{}", recipe.name);
        let csv = emit_csv(&result).unwrap();
        assert_eq!(parse_csv(&csv).unwrap().rows, result.rows);
        for outcome in recipe.evaluate_checks(&result) {
            println!(
                "{} {} {} {} {}: {}",
                if outcome.pass { "PASS" } else { "FAIL" },
                recipe.name,
                outcome.check.scenario,
                outcome.check.method,
                outcome.check.trend,
                outcome.detail
            );
            assert!(outcome.pass, "{}: {}", recipe.name, outcome.detail);
        }
        println!("{} finished in {:.1?}", recipe.name, start.elapsed());
    }
}
