use tricross::generate::{GenOptions, Pipeline};
fn main() {
    let mut p = Pipeline::new(GenOptions::default());
    let t0 = std::time::Instant::now();
    println!("Sh_8  = {} ({:?})", p.shadows(8).unwrap().len(), t0.elapsed());
    let t = std::time::Instant::now();
    println!("Ta_3  = {} ({:?})", p.ta(3).unwrap().len(), t.elapsed());
    println!("Tb_3  = {}", p.tb(3).unwrap().len());
    println!("Th_3  = {}", p.th(3).unwrap().len());
    println!("Th0_3 = {}", p.th0(3).unwrap().len());
    println!("Gr_3  = {}", p.gr(3).unwrap().len());
    let t = std::time::Instant::now();
    println!("Ta_4  = {} ({:?})", p.ta(4).unwrap().len(), t.elapsed());
    println!("Tb_4  = {}", p.tb(4).unwrap().len());
    println!("Th_4  = {}", p.th(4).unwrap().len());
    println!("Th0_4 = {}", p.th0(4).unwrap().len());
    println!("Gr_4  = {}", p.gr(4).unwrap().len());
    println!("Th_1  = {}", p.th(1).unwrap().len());
    for c in p.th(1).unwrap().iter() { println!("  {}", c.serialize()); }
    println!("total {:?}", t0.elapsed());
}
