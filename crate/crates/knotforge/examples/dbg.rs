use knotforge::diagram::fixtures::*;
use knotforge::moves::*;
use knotforge::invariants::kauffman_bracket;

fn main() {
    let d = trefoil();
    println!("== R3 on trefoil ==");
    for m in enumerate_moves(&d, &[MoveKind::R3]) {
        let r = apply_move(&d, &m);
        match r {
            Ok(out) => {
                let same = kauffman_bracket(&out, 26).unwrap() == kauffman_bracket(&d, 26).unwrap();
                println!("{:?} -> {} bracket_same={} comps={}", m, out.to_pd_string(), same, out.n_components());
            }
            Err(e) => println!("{:?} -> ERR {}", m, e),
        }
    }
    println!("== R2up on trefoil (first 6) ==");
    for m in enumerate_moves(&d, &[MoveKind::R2Up]).into_iter().take(6) {
        let r = apply_move(&d, &m);
        match r {
            Ok(out) => println!("{:?} -> {} comps={}", m, out.to_pd_string(), out.n_components()),
            Err(e) => println!("{:?} -> ERR {}", m, e),
        }
    }
}
