from nspnp_cli.cli import main as cli
