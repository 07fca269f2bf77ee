from travelwave.interfaces.cli import cli


def main():
    cli(prog_name="travelwave")


if __name__ == "__main__":
    main()
