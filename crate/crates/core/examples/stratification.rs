//! Faces of the simplex as Poisson submanifolds, with the bracket each
//! face inherits.
//!
//! cargo run --example stratification -- [n] [seed]

use poisson_fixset::sampling;
use poisson_fixset::simplex::{
    check_face_stratification, enumerate_faces, face_structure, format_simplex_entry, SkewParamMatrix,
};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(2, |s| s.parse().expect("n"));
    let seed: u64 = args.next().map_or(5, |s| s.parse().expect("seed"));
    let a = SkewParamMatrix::random(n, &mut sampling::seeded(seed)).unwrap();
    println!("A = {}", a.matrix().unwrap());

    let cert = check_face_stratification(&a).unwrap();
    println!(
        "{} face and {} hyperplane divisibility checks: {}",
        cert.faces.len(),
        cert.sums.len(),
        cert.passed()
    );
    for face in enumerate_faces(n) {
        let p = face_structure(&a, &face).unwrap();
        let names = p.chart().coordinate_names();
        let entries: Vec<String> = p
            .upper_entries()
            .filter(|(_, _, e)| !e.is_zero())
            .map(|(i, j, e)| {
                let shown = format_simplex_entry(p.chart(), i, j, e.numerator());
                format!("{{{},{}}} = {shown}", names[i], names[j])
            })
            .collect();
        println!(
            "dim {} face, zero set {:?}: {}",
            face.dimension,
            face.vanishing,
            if entries.is_empty() {
                "0".into()
            } else {
                entries.join("; ")
            }
        );
    }
}
