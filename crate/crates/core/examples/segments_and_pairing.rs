//! Alternating segments, the frame around one, and the odd-vertex pairing
//! that the structural lemmas reason about.

use flowforge::fixtures::{figure_one, FIGURE_ONE_WEIGHTS};
use flowforge::pairing::{anchors, normalize, PATH_CAP};
use flowforge::{alternating_segments, pairing, Direction, Frame, Z2Z2};

fn main() -> flowforge::Result<()> {
    let (q, g, _) = figure_one(&FIGURE_ONE_WEIGHTS);
    let c = q.circuit();
    for s in alternating_segments(&g, c) {
        let frame = Frame::new(c, s, Direction::Forward);
        println!("segment start={} len={}: frame weights {:?}", s.start, s.len, frame.weights(c, q.weights()));
        let Some((sigma, h)) = normalize(c, &frame, &g) else {
            println!("  flanking values do not normalise");
            continue;
        };
        println!("  normaliser {sigma:?}, frame values {:?}", frame.values(c, &h));
        let a = anchors(&q, &h, &frame, PATH_CAP)?;
        println!("  t={:?} t_bar={:?} t'={:?} second anchors={}", a.t, a.t_bar, a.t_prime, a.t_double_prime.len());
    }
    let p = pairing(&q, &g, Z2Z2::A10, Z2Z2::A01);
    for comp in &p.components {
        println!("P_(10,01) component {:?}: odd {:?}", comp.vertices, comp.odd_vertices);
    }
    Ok(())
}
