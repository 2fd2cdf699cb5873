// Deploy-time settings, loaded before the bundle. Point apiBase at the
// service; leave it empty when the static files are served by the same
// origin (or behind the same reverse proxy).
window.EMOTRACK_CONFIG = {
  apiBase: "",
};
