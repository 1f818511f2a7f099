//! SVG figure of an arrangement with its conic, Pascal line and quartic.

use ziegler::cli::resolve;
use ziegler::svg::SvgScene;

fn main() {
    let input = std::env::args().nth(1).unwrap_or_else(|| "AD".into());
    let subject = resolve(&input).expect("input");
    let mut scene = SvgScene::for_arrangement(&subject.arrangement().expect("arrangement"));
    if let Ok(h) = subject.hexagon() {
        scene = scene.with_hexagon(&h);
    }
    match std::env::args().nth(2) {
        Some(path) => std::fs::write(&path, scene.render()).expect("write"),
        None => print!("{}", scene.render()),
    }
}
