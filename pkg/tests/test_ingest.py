from __future__ import annotations

import http.server
import json
import threading

import numpy as np
import pytest

from cyclegap.errors import DomainError, FetchError, GapError, InsufficientData, ParseError
from cyclegap.ingest import (
    OFFLINE_ENV,
    DatasetManifest,
    cache_paths,
    deseasonalize_ma,
    fetch_remote,
    params_hash,
    read_series_csv,
    read_share_panel_csv,
    sdmx_csv_to_series_csv,
    write_series_csv,
)
from cyclegap.series import Quarter, QuarterlySeries


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


class TestSeriesCsv:
    def test_round_trip_is_exact(self, tmp_path):
        s = QuarterlySeries("2002Q1", [0.1, 1 / 3, 1e-300, 123456.789])
        p = tmp_path / "s.csv"
        write_series_csv(p, {"x": s})
        assert read_series_csv(p) == s

    def test_rows_in_any_order(self, tmp_path):
        p = write(tmp_path, "s.csv", "date,v\n2002Q2,2\n2002Q1,1\n2002Q3,3\n")
        s = read_series_csv(p)
        assert s.start == Quarter(2002, 1)
        np.testing.assert_array_equal(s.values, [1, 2, 3])

    def test_named_column(self, tmp_path):
        p = write(tmp_path, "s.csv", "date,a,b\n2002Q1,1,10\n2002Q2,2,20\n")
        np.testing.assert_array_equal(read_series_csv(p, value_column="b").values, [10, 20])

    def test_interior_gap(self, tmp_path):
        p = write(tmp_path, "s.csv", "date,v\n2002Q1,1\n2002Q3,3\n")
        with pytest.raises(GapError) as info:
            read_series_csv(p)
        assert info.value.missing == [Quarter(2002, 2)]
        assert "s.csv" in str(info.value)

    @pytest.mark.parametrize("body,row", [("2002Q1,1\n2002Q2,abc\n", 3), ("2002Q1,1\n2002-06,2\n", 3), ("2002Q1,nan\n", 2)])
    def test_parse_errors_carry_row(self, tmp_path, body, row):
        p = write(tmp_path, "bad.csv", "date,v\n" + body)
        with pytest.raises(ParseError) as info:
            read_series_csv(p)
        assert info.value.row == row
        assert "bad.csv" in str(info.value)

    def test_duplicate_quarter(self, tmp_path):
        p = write(tmp_path, "d.csv", "date,v\n2002Q1,1\n2002Q1,2\n")
        with pytest.raises(ParseError):
            read_series_csv(p)

    def test_missing_file_and_column(self, tmp_path):
        with pytest.raises(ParseError):
            read_series_csv(tmp_path / "nope.csv")
        p = write(tmp_path, "s.csv", "when,v\n2002Q1,1\n")
        with pytest.raises(ParseError):
            read_series_csv(p)

    def test_header_only(self, tmp_path):
        with pytest.raises(InsufficientData):
            read_series_csv(write(tmp_path, "h.csv", "date,v\n"))


class TestSharePanel:
    def test_percent_rows_are_normalized(self, tmp_path):
        p = write(tmp_path, "p.csv", "date,A,B\n2002Q1,25,75\n2002Q2,50,50\n")
        panel = read_share_panel_csv(p)
        assert panel[Quarter(2002, 1)]["A"] == 0.25
        assert panel.labels == ("A", "B") and len(panel) == 2

    def test_empty_cell_drops_row(self, tmp_path, caplog):
        p = write(tmp_path, "p.csv", "date,A,B\n2002Q1,25,75\n2002Q2,,50\n")
        panel = read_share_panel_csv(p)
        assert panel.dropped == (Quarter(2002, 2),)
        assert "dropped 1 quarters" in caplog.text

    def test_negative_share(self, tmp_path):
        p = write(tmp_path, "p.csv", "date,A,B\n2002Q1,-5,105\n")
        with pytest.raises(DomainError, match="row 2"):
            read_share_panel_csv(p)

    def test_zero_row(self, tmp_path):
        with pytest.raises(DomainError):
            read_share_panel_csv(write(tmp_path, "p.csv", "date,A,B\n2002Q1,0,0\n"))

    def test_unnormalized_must_sum_to_one(self, tmp_path):
        p = write(tmp_path, "p.csv", "date,A,B\n2002Q1,0.3,0.6\n")
        with pytest.raises(DomainError):
            read_share_panel_csv(p, normalize=False)


class TestDeseasonalize:
    def test_removes_pure_seasonal_pattern(self):
        t = np.arange(40)
        pattern = np.array([3.0, -1.0, -4.0, 2.0])
        s = QuarterlySeries("2002Q1", 100 + 0.5 * t + pattern[t % 4])
        adj = deseasonalize_ma(s)
        np.testing.assert_allclose(adj.values, 100 + 0.5 * t, atol=1e-9)

    def test_multiplicative(self):
        t = np.arange(32)
        factors = np.array([1.05, 0.97, 0.95, 1.03])
        factors = factors / factors.mean()
        s = QuarterlySeries("2003Q3", 50 * np.exp(0.0 * t) * factors[(t + 2) % 4])
        np.testing.assert_allclose(deseasonalize_ma(s, multiplicative=True).values, 50.0, rtol=1e-9)

    def test_too_short(self):
        with pytest.raises(InsufficientData):
            deseasonalize_ma(QuarterlySeries("2002Q1", np.ones(7)))


SDMX = "DATAFLOW,geo,TIME_PERIOD,OBS_VALUE\nESTAT:X,RO,2002-Q1,10.5\nESTAT:X,RO,2002-Q2,11\nESTAT:X,RO,2002-Q3,\n"


class _Handler(http.server.BaseHTTPRequestHandler):
    hits: list[str] = []

    def do_GET(self):  # noqa: N802 - stdlib hook name
        type(self).hits.append(self.path)
        if self.path.startswith("/missing"):
            self.send_response(404)
            self.end_headers()
            return
        body = SDMX.encode()
        self.send_response(200)
        self.send_header("Content-Type", "text/csv")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):
        pass


@pytest.fixture
def server():
    _Handler.hits = []
    httpd = http.server.HTTPServer(("127.0.0.1", 0), _Handler)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{httpd.server_port}", _Handler.hits
    httpd.shutdown()
    httpd.server_close()


class TestFetch:
    def test_sdmx_conversion(self):
        text = sdmx_csv_to_series_csv(SDMX, "gdp")
        assert text == "date,gdp\n2002Q1,10.5\n2002Q2,11.0\n"

    def test_sdmx_rejects_ambiguous_filter(self):
        with pytest.raises(ParseError, match="narrow the filter"):
            sdmx_csv_to_series_csv(SDMX + "ESTAT:X,BG,2002-Q1,3\n", "gdp")

    def test_hash_is_order_independent(self):
        assert params_hash("d", {"a": 1, "b": 2}) == params_hash("d", {"b": 2, "a": 1})
        assert params_hash("d", {"a": 1}) != params_hash("d", {"a": 2})

    def test_download_then_cache_hit(self, server, tmp_path, monkeypatch):
        monkeypatch.delenv(OFFLINE_ENV, raising=False)
        url, hits = server
        p = fetch_remote("namq_10_gdp", {"geo": "RO"}, tmp_path, base_url=url)
        assert read_series_csv(p).at("2002Q2") == 11.0
        meta = json.loads(cache_paths(tmp_path, "namq_10_gdp", {"geo": "RO"})[1].read_text())
        assert meta["params"] == {"geo": "RO"}
        assert fetch_remote("namq_10_gdp", {"geo": "RO"}, tmp_path, base_url=url) == p
        assert len(hits) == 1

    def test_offline_cold_cache(self, tmp_path, monkeypatch):
        monkeypatch.setenv(OFFLINE_ENV, "1")
        with pytest.raises(FetchError):
            fetch_remote("namq_10_gdp", {"geo": "RO"}, tmp_path, base_url="http://127.0.0.1:9")

    def test_offline_warm_cache(self, server, tmp_path, monkeypatch):
        url, _ = server
        monkeypatch.delenv(OFFLINE_ENV, raising=False)
        p = fetch_remote("namq_10_gdp", {"geo": "RO"}, tmp_path, base_url=url)
        monkeypatch.setenv(OFFLINE_ENV, "1")
        assert fetch_remote("namq_10_gdp", {"geo": "RO"}, tmp_path, base_url=url) == p

    def test_http_error_status(self, server, tmp_path, monkeypatch):
        monkeypatch.delenv(OFFLINE_ENV, raising=False)
        url, _ = server
        with pytest.raises(FetchError) as info:
            fetch_remote("x", {}, tmp_path, base_url=url + "/missing")
        assert info.value.status == 404
        assert not any(tmp_path.rglob("*.csv"))


class TestManifest:
    def test_shipped_manifest_loads(self):
        from cyclegap.pipeline.config import fixtures_dir

        m = DatasetManifest.load(fixtures_dir() / "manifest.json")
        assert (str(m.sample_start), str(m.sample_end)) == ("2002Q1", "2017Q4")
        assert len(m.load_series("gdp_ro")) == 64
        assert len(m.load_panel("gva_shares_ro").labels) == 11

    def _manifest(self, tmp_path, variables, **extra):
        doc = {"sample": {"start": "2002Q1", "end": "2002Q4"}, "variables": variables, **extra}
        return write(tmp_path, "m.json", json.dumps(doc))

    def test_missing_variables(self, tmp_path):
        with pytest.raises(ParseError, match="lacks variables"):
            DatasetManifest.load(self._manifest(tmp_path, {"gdp_ro": {"path": "x.csv"}}))

    def test_unknown_keys(self, tmp_path):
        with pytest.raises(ParseError):
            DatasetManifest.load(self._manifest(tmp_path, {}, colour="blue"))

    def test_path_xor_dataset(self, tmp_path):
        with pytest.raises(ParseError):
            DatasetManifest.load(self._manifest(tmp_path, {"gdp_ro": {"path": "a", "dataset": "b"}}))

    def test_not_found(self, tmp_path):
        with pytest.raises(ParseError, match="not found"):
            DatasetManifest.load(tmp_path / "absent.json")
