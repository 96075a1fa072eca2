// Expects the bindings built with
//   wasm-pack build crates/wasm-demo --target web --out-dir www/pkg
import init, { corpusFiles, vertexCheck, weightedRankVector, zkEntropyVector } from "./pkg/wrank_wasm_demo.js";

const $ = (id) => document.getElementById(id);

function subsetLabel(hex) {
  const mask = parseInt(hex, 16);
  const elements = [];
  for (let i = 0; mask >> i; i++) {
    if ((mask >> i) & 1) elements.push(i + 1);
  }
  return `{${elements.join(",")}}`;
}

// One row per subset, one column per vector-valued field of the result.
function renderTable(result) {
  const columns = Object.entries(result).filter(
    ([, v]) => v && typeof v === "object" && !Array.isArray(v) && Object.keys(v)[0] === "0x1",
  );
  if (columns.length === 0) {
    $("table").replaceChildren();
    return;
  }
  const table = document.createElement("table");
  const head = table.insertRow();
  for (const name of ["subset", ...columns.map(([c]) => c)]) {
    const th = document.createElement("th");
    th.textContent = name;
    head.appendChild(th);
  }
  for (const key of Object.keys(columns[0][1])) {
    const row = table.insertRow();
    row.insertCell().textContent = `${key} ${subsetLabel(key)}`;
    for (const [, vector] of columns) {
      const value = vector[key];
      row.insertCell().textContent = typeof value === "number" ? value.toFixed(9) : String(value);
    }
  }
  $("table").replaceChildren(table);
}

function show(text) {
  const result = JSON.parse(text);
  renderTable(result);
  $("output").textContent = text;
}

await init();

const presets = JSON.parse(corpusFiles());
for (const stem of Object.keys(presets)) {
  $("preset").appendChild(new Option(stem, stem));
}
$("preset").addEventListener("change", () => {
  $("matroid").value = presets[$("preset").value];
});
$("preset").value = "triangle";
$("matroid").value = presets.triangle;

$("phi").addEventListener("click", () => show(weightedRankVector($("matroid").value)));
$("vertex").addEventListener("click", () => show(vertexCheck($("matroid").value)));
$("zk").addEventListener("click", () => show(zkEntropyVector($("matroid").value, Number($("k").value))));
