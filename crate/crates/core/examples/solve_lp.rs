//! The simplex solver on a small hand-written LP, with duals and a dump.

use solargrid::optimizer::{solve_simplex, write_lp_dump, LpProblem, Relation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // minimize x1 + x2  s.t.  2 x1 + x2 >= 4,  x1 + 3 x2 >= 6,  x1 <= 3
    let mut lp = LpProblem::new(
        vec![1.0, 1.0],
        vec![
            (vec![2.0, 1.0], Relation::Ge, 4.0),
            (vec![1.0, 3.0], Relation::Ge, 6.0),
            (vec![1.0, 0.0], Relation::Le, 3.0),
        ],
    );
    lp.var_names = vec!["east".into(), "west".into()];
    print!("{}", write_lp_dump(&lp));

    let sol = solve_simplex(&lp)?;
    println!("\nstatus {:?} after {} pivots", sol.status, sol.iterations);
    for (name, x) in lp.var_names.iter().zip(&sol.scale_factors) {
        println!("  {name} = {x:.4}");
    }
    println!(
        "objective {:.4}, dual objective {:.4}",
        sol.objective_value,
        sol.dual_objective(&lp)
    );
    for (row, y) in lp.rows.iter().zip(&sol.dual_values) {
        println!("  {} dual {y:.4}", row.label);
    }
    Ok(())
}
