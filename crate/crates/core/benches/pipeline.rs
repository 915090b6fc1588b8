// placeholder
fn main(){}
