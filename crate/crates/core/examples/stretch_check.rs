use tricross::generate::{GenOptions, Pipeline};
fn main() {
    let mut p = Pipeline::new(GenOptions::default());
    let t0 = std::time::Instant::now();
    println!("Sh_10 = {} ({:?})", p.shadows(10).unwrap().len(), t0.elapsed());
    let t = std::time::Instant::now();
    println!("Ta_5  = {} ({:?})", p.ta(5).unwrap().len(), t.elapsed());
    let t = std::time::Instant::now();
    println!("Tb_5  = {} ({:?})", p.tb(5).unwrap().len(), t.elapsed());
    println!("Th_5  = {}", p.th(5).unwrap().len());
    println!("Th0_5 = {}", p.th0(5).unwrap().len());
    let th0 = p.th0(5).unwrap();
    for c in th0.iter() {
        println!("  components={}", c.components().unwrap().component_count());
    }
    println!("total {:?}", t0.elapsed());
}
