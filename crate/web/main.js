import init, { landscape, measures, sweep } from "./pkg/emb_web.js";

const $ = (id) => document.getElementById(id);

function parseParams(text) {
  const t = text.trim();
  if (!t) return new Float64Array(0);
  return new Float64Array(t.split(",").map(Number));
}

function guard(out, f) {
  out.classList.remove("err");
  try {
    f();
  } catch (e) {
    out.textContent = String(e);
    out.classList.add("err");
  }
}

function runMeasures() {
  const out = $("m-out");
  guard(out, () => {
    const r = JSON.parse(measures($("m-name").value, parseParams($("m-params").value)));
    out.textContent = JSON.stringify(r, null, 2);
  });
}

function drawLandscape() {
  const out = $("l-out");
  guard(out, () => {
    const n = Number($("l-res").value);
    const party = Number($("l-party").value);
    const values = landscape($("l-name").value, parseParams($("l-params").value), party, n);
    let lo = Infinity, hi = -Infinity, at = 0;
    values.forEach((v, i) => {
      if (v < lo) { lo = v; at = i; }
      if (v > hi) hi = v;
    });
    const canvas = $("l-canvas");
    const ctx = canvas.getContext("2d");
    const img = ctx.createImageData(n, n);
    const span = hi - lo || 1;
    values.forEach((v, i) => {
      const g = Math.round(255 * (v - lo) / span);
      img.data.set([g, Math.round(g * 0.8), 255 - g, 255], 4 * i);
    });
    const tmp = document.createElement("canvas");
    tmp.width = n;
    tmp.height = n;
    tmp.getContext("2d").putImageData(img, 0, 0);
    ctx.imageSmoothingEnabled = false;
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    ctx.drawImage(tmp, 0, 0, canvas.width, canvas.height);
    const theta = (Math.PI / 2) * Math.floor(at / n) / (n - 1);
    const phi = (2 * Math.PI) * (at % n) / n;
    out.textContent = `min ${lo.toFixed(6)} at θ=${theta.toFixed(4)}, φ=${phi.toFixed(4)}; max ${hi.toFixed(6)}`;
  });
}

function runSweep() {
  const out = $("s-out");
  const table = $("s-table");
  guard(out, () => {
    const rows = JSON.parse(sweep(Number($("s-points").value)));
    const cols = ["x", "emb", "egeom", "ehmin", "ebi", "tangle"];
    table.innerHTML = "<tr>" + cols.map((c) => `<th>${c}</th>`).join("") + "</tr>" +
      rows.map((r) => "<tr>" + cols.map((c) => `<td>${r[c].toFixed(5)}</td>`).join("") + "</tr>").join("");
    out.textContent = `${rows.length} rows`;
  });
}

await init();
$("m-run").onclick = runMeasures;
$("l-run").onclick = drawLandscape;
$("s-run").onclick = runSweep;
runMeasures();
drawLandscape();
