//! Running the command layer on problem files held in memory.

use poisson_fixset::cli::{cmd_action_check, cmd_jacobi, cmd_reduce, RunOptions};

const TORUS: &str = "\
[chart]
coords = z0 z1 zbar0 zbar1

[bracket]
{z0,z1} = 2*z0*z1

[torus]
pair = z0 zbar0 : 0
pair = z1 zbar1 : 1
";

fn main() {
    let jac = cmd_jacobi(TORUS).unwrap();
    print!("{}", jac.render(true));
    print!("{}", cmd_action_check(TORUS).unwrap().render(true));
    let opts = RunOptions {
        seed: Some(1),
        points: Some(10),
        trials: Some(4),
    };
    print!("{}", cmd_reduce(TORUS, &opts).unwrap().render(false));
}
