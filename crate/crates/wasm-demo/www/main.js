import init, { family_report, milnor_staircase, polar_report } from "./pkg/polargerm_web.js";

const $ = (id) => document.getElementById(id);

function drawStaircase(data) {
  const canvas = $("stairs");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (data.error) return;
  const n = data.box;
  const cell = canvas.width / n;
  // exponent of x grows to the right, exponent of y grows upwards
  const at = (i, j) => [i * cell, canvas.height - (j + 1) * cell];
  ctx.fillStyle = "#9ec5e8";
  for (const [i, j] of data.staircase) ctx.fillRect(...at(i, j), cell, cell);
  ctx.strokeStyle = "#ddd";
  for (let k = 0; k <= n; k++) {
    ctx.beginPath(); ctx.moveTo(k * cell, 0); ctx.lineTo(k * cell, canvas.height); ctx.stroke();
    ctx.beginPath(); ctx.moveTo(0, k * cell); ctx.lineTo(canvas.width, k * cell); ctx.stroke();
  }
  ctx.fillStyle = "#a3161b";
  for (const [i, j] of data.leading) {
    if (i >= n || j >= n) continue;
    const [x, y] = at(i, j);
    ctx.beginPath(); ctx.arc(x + cell / 2, y + cell / 2, cell / 4, 0, 2 * Math.PI); ctx.fill();
  }
}

function runMilnor() {
  const data = JSON.parse(milnor_staircase($("mf").value));
  drawStaircase(data);
  $("mout").textContent = data.error ? data.error : JSON.stringify({ mu: data.mu, basis: data.basis }, null, 2);
}

function runFamily() {
  let [a, b, m] = ["fa", "fb", "fm"].map((id) => Number($(id).value));
  if (b <= a) { b = a + 1; $("fb").value = b; }
  $("fav").textContent = a; $("fbv").textContent = b; $("fmv").textContent = m;
  const report = JSON.parse(family_report(a, b, m));
  const r = report.results;
  const summary = $("fsum");
  if (report.status === "ok" || report.status === "mismatch") {
    summary.className = report.status === "ok" ? "ok" : "bad";
    summary.textContent = `gamma = ${r.gamma}, tau = ${r.tau}, H^2 rank = ${r.betti_top} (${report.status})`;
  } else {
    summary.className = "bad";
    summary.textContent = report.error ? report.error.message : report.status;
  }
  $("fout").textContent = JSON.stringify(r, null, 2);
}

function runPolar() {
  const report = JSON.parse(polar_report($("pf").value));
  $("pout").textContent = JSON.stringify(report.error ?? report.results, null, 2);
}

await init();
$("mrun").onclick = runMilnor;
$("prun").onclick = runPolar;
for (const id of ["fa", "fb", "fm"]) $(id).oninput = runFamily;
runMilnor();
runFamily();
runPolar();
