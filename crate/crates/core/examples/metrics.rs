// Off-diagonal AUROC / AUPRC, including tied scores.
use tscd_bench::eval::{auprc, auprc_ranked, auroc, auroc_ranked};
use tscd_bench::generators::CausalGraph;
use tscd_bench::methods::ScoreMatrix;
use tscd_bench::numerics::Matrix;

fn main() -> tscd_bench::Result<()> {
    let truth = CausalGraph::from_summary(vec![
        vec![true, true, false],
        vec![false, true, true],
        vec![false, false, true],
    ])?;
    let scores = ScoreMatrix::from_matrix(Matrix::from_rows(&[
        vec![9.0, 0.8, 0.3],
        vec![0.3, 9.0, 0.6],
        vec![0.1, 0.7, 9.0],
    ])?)?;
    println!("auroc {:.4} auprc {:.4}", auroc(&scores, &truth)?, auprc(&scores, &truth)?);

    let s = [0.9, 0.5, 0.5, 0.5, 0.1];
    let l = [true, false, true, false, false];
    println!("ties: auroc {:.4} auprc {:.4}", auroc_ranked(&s, &l)?, auprc_ranked(&s, &l)?);
    Ok(())
}
